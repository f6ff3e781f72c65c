"""Systematic component codes with lower-triangular parity-check matrices.

Two families are provided: single parity-check codes and serial
concatenations of multiple-parity-check stages with pairwise distinct
moduli.  Both encode by back-substitution, all redundancy at the end of
the codeword, so row i of H has its rightmost 1 at column k+i.
"""

from __future__ import annotations

import numpy as np

from .gf2 import SparseBinMatrix


class ComponentCode:
    """An (n, k) systematic block code defined by a triangular H."""

    __slots__ = ("n", "k", "r", "H", "label", "_parity_deps")

    def __init__(self, n: int, k: int, H: SparseBinMatrix, label: str) -> None:
        r = n - k
        if r < 1 or k < 1:
            raise ValueError("need k >= 1 and at least one parity bit")
        if H.rows != r or H.cols != n:
            raise ValueError(f"H must be {r}x{n}, got {H.rows}x{H.cols}")
        for i, sup in enumerate(H.row_support):
            if sup.size == 0 or sup[-1] != k + i:
                raise ValueError(
                    f"row {i} must have its rightmost 1 at column {k + i}"
                )
        self.n = n
        self.k = k
        self.r = r
        self.H = H
        self.label = label
        # Row i minus its own parity column: XOR of these gives parity bit i.
        self._parity_deps = [sup[:-1] for sup in H.row_support]

    def encode_batch(self, info: np.ndarray) -> np.ndarray:
        """Encode each row of a (count, k) bit array to (count, n)."""
        info = np.asarray(info, dtype=np.uint8)
        if info.ndim != 2 or info.shape[1] != self.k:
            raise ValueError(f"expected (*, {self.k}) info rows, got {info.shape}")
        out = np.zeros((info.shape[0], self.n), dtype=np.uint8)
        out[:, : self.k] = info
        for i, deps in enumerate(self._parity_deps):
            out[:, self.k + i] = out[:, deps].sum(axis=1, dtype=np.int64) & 1
        return out

    def __repr__(self) -> str:
        return f"ComponentCode({self.label}: n={self.n}, k={self.k})"


def encode_systematic(code: ComponentCode, info) -> np.ndarray:
    """Systematic codeword for one info vector of length k."""
    info = np.asarray(info, dtype=np.uint8)
    if info.shape != (code.k,):
        raise ValueError(f"info length {info.shape} does not match k={code.k}")
    return code.encode_batch(info[None, :])[0]


def build_spc(k: int) -> ComponentCode:
    """Single parity-check code (k+1, k): H is one all-ones row."""
    if k < 1:
        raise ValueError("SPC needs k >= 1")
    H = SparseBinMatrix(1, k + 1, [np.arange(k + 1)])
    return ComponentCode(k + 1, k, H, f"spc:{k}")


def _violates_row_column_constraint(H: SparseBinMatrix) -> bool:
    """True if some pair of rows shares more than one column (a 4-cycle)."""
    seen = set()
    for rows in H.col_support():
        rows = rows.tolist()
        for x in range(len(rows)):
            for y in range(x + 1, len(rows)):
                key = (rows[x], rows[y])
                if key in seen:
                    return True
                seen.add(key)
    return False


def build_mscmpc(k: int, r_list) -> ComponentCode:
    """Serial concatenation of multiple-parity-check stages.

    Stage j sees the length-L_j output of the previous stage (L_1 = k)
    and appends r_j parity bits; parity p is the XOR of the stage input
    bits at positions congruent to p modulo r_j.  The moduli must be
    pairwise distinct, and the resulting matrix is checked for the
    row-column constraint: short stage moduli relative to the running
    length can still align two rows on two columns, which would drop
    the girth to 4, so such parameter sets are rejected.
    """
    r_list = [int(r) for r in r_list]
    if k < 1:
        raise ValueError("need k >= 1")
    if not r_list:
        raise ValueError("need at least one parity stage")
    if any(r < 2 for r in r_list):
        raise ValueError("every stage redundancy must be >= 2")
    if len(set(r_list)) != len(r_list):
        raise ValueError("stage redundancies must be pairwise distinct")
    n = k + sum(r_list)
    support = []
    stage_start = k
    for r_j in r_list:
        for p in range(r_j):
            covered = np.arange(p, stage_start, r_j, dtype=np.int64)
            support.append(np.append(covered, stage_start + p))
        stage_start += r_j
    H = SparseBinMatrix(n - k, n, support)
    if _violates_row_column_constraint(H):
        raise ValueError(
            f"k={k}, stages {r_list} put two parity rows on two shared "
            "columns (girth 4); pick larger or coprime stage moduli"
        )
    label = f"mscmpc:{k}:{','.join(str(r) for r in r_list)}"
    return ComponentCode(n, k, H, label)


def parse_component_spec(text: str) -> ComponentCode:
    """Build a component from its textual form.

    Grammar: ``spc:k`` or ``mscmpc:k:r1,r2,...``.
    """
    parts = text.strip().split(":")
    try:
        if parts[0] == "spc" and len(parts) == 2:
            return build_spc(int(parts[1]))
        if parts[0] == "mscmpc" and len(parts) == 3:
            r_list = [int(tok) for tok in parts[2].split(",") if tok]
            return build_mscmpc(int(parts[1]), r_list)
    except ValueError as exc:
        raise ValueError(f"invalid component spec {text!r}: {exc}") from exc
    raise ValueError(
        f"invalid component spec {text!r} (use spc:k or mscmpc:k:r1,r2,...)"
    )
