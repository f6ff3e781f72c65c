"""Reader/writer for the alist sparse-matrix text format.

Layout: first line "cols rows", then "max_col_degree max_row_degree",
the per-column and per-row degree lists, and finally the 1-based index
lists, one line per column then one per row, zero-padded to the maximum
degree.  write_alist/read_alist round-trip bit-exactly.
"""

from __future__ import annotations

import numpy as np

from .gf2 import SparseBinMatrix


def write_alist(m: SparseBinMatrix, path) -> None:
    col_sup = m.col_support()
    row_sup = m.row_support
    col_deg = [len(s) for s in col_sup]
    row_deg = [len(s) for s in row_sup]
    max_col = max(col_deg, default=0)
    max_row = max(row_deg, default=0)

    def padded(indices, width):
        vals = [str(int(i) + 1) for i in indices]
        vals += ["0"] * (width - len(vals))
        return " ".join(vals)

    lines = [
        f"{m.cols} {m.rows}",
        f"{max_col} {max_row}",
        " ".join(str(d) for d in col_deg),
        " ".join(str(d) for d in row_deg),
    ]
    lines += [padded(s, max_col) for s in col_sup]
    lines += [padded(s, max_row) for s in row_sup]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_alist(path) -> SparseBinMatrix:
    with open(path) as fh:
        tokens = fh.read().split()
    pos = 0

    def take(count):
        nonlocal pos
        if pos + count > len(tokens):
            raise ValueError("truncated alist file")
        vals = [int(t) for t in tokens[pos : pos + count]]
        pos += count
        return vals

    cols, rows = take(2)
    max_col, max_row = take(2)
    col_deg = take(cols)
    row_deg = take(rows)

    row_support = [np.empty(0, dtype=np.int64)] * rows
    # Column index lists fully determine the matrix; the row lists are
    # read and checked for consistency.
    entries_by_row: list[list[int]] = [[] for _ in range(rows)]
    for c in range(cols):
        vals = take(max_col)
        nz = [v - 1 for v in vals if v != 0]
        if len(nz) != col_deg[c]:
            raise ValueError(f"column {c}: degree list disagrees with indices")
        for r in nz:
            if not 0 <= r < rows:
                raise ValueError(f"column {c}: row index {r + 1} out of range")
            entries_by_row[r].append(c)
    for r in range(rows):
        vals = take(max_row)
        nz = sorted(v - 1 for v in vals if v != 0)
        if nz != sorted(entries_by_row[r]) or len(nz) != row_deg[r]:
            raise ValueError(f"row {r}: row and column index lists disagree")
        row_support[r] = np.array(nz, dtype=np.int64)
    return SparseBinMatrix(rows, cols, row_support)
