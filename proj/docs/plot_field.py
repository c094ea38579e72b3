# Copyright (c) 2026 the hbie authors
# SPDX-License-Identifier: Apache-2.0
"""Plot field samples from a solver CSV: python3 docs/plot_field.py out.csv"""

import csv
import sys

import matplotlib.pyplot as plt
import numpy as np


def main(path):
    xs, ys, re = [], [], []
    with open(path, newline="") as f:
        for row in csv.reader(r for r in f if not r.startswith("#")):
            if row[0] not in ("probe", "grid"):
                continue
            xs.append(float(row[1]))
            ys.append(float(row[2]))
            re.append(float(row[3]))
    sc = plt.scatter(xs, ys, c=re, s=14, cmap="RdBu_r")
    plt.colorbar(sc, label="Re u")
    plt.gca().set_aspect("equal")
    plt.title(path)
    plt.show()


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "out.csv")
