"""Decimal-text interchange files.

Feature file: a header line ``n d`` followed by n lines of d
space-separated decimals.  Label file: one nonnegative integer per
line.  Values are written with 17 significant digits, so a write/read
round trip reproduces doubles exactly.
"""

from __future__ import annotations

import numpy as np


def read_features(path) -> np.ndarray:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError(f"{path}: expected 'n d' header line")
        try:
            n, d = int(header[0]), int(header[1])
        except ValueError:
            raise ValueError(f"{path}: malformed header {header!r}") from None
        if n < 1 or d < 1:
            raise ValueError(f"{path}: header requires n, d >= 1")
        rows = []
        for i, line in enumerate(fh):
            toks = line.split()
            if not toks and i >= n:
                continue
            if len(toks) != d:
                raise ValueError(f"{path}: line {i + 2} has {len(toks)} values, expected {d}")
            rows.append([float(t) for t in toks])
    if len(rows) != n:
        raise ValueError(f"{path}: header promises {n} rows, found {len(rows)}")
    data = np.array(rows, dtype=float)
    if not np.all(np.isfinite(data)):
        raise ValueError(f"{path}: non-finite value in feature data")
    return data


def write_features(path, feats: np.ndarray) -> None:
    feats = np.atleast_2d(np.asarray(feats, dtype=float))
    n, d = feats.shape
    with open(path, "w") as fh:
        fh.write(f"{n} {d}\n")
        for row in feats:
            fh.write(" ".join(f"{x:.17g}" for x in row) + "\n")


def read_labels(path) -> np.ndarray:
    labels = []
    with open(path) as fh:
        for i, line in enumerate(fh):
            tok = line.strip()
            if not tok:
                continue
            try:
                value = int(tok)
            except ValueError:
                raise ValueError(f"{path}: line {i + 1} is not an integer") from None
            if value < 0:
                raise ValueError(f"{path}: line {i + 1} is negative")
            labels.append(value)
    if not labels:
        raise ValueError(f"{path}: empty label file")
    return np.array(labels, dtype=int)


def write_labels(path, labels) -> None:
    with open(path, "w") as fh:
        for lab in np.asarray(labels, dtype=int):
            fh.write(f"{lab}\n")
