"""Log-domain sum-product decoding on a Tanner graph.

Flooding schedule with the exact tanh product rule at the check nodes,
LLR summation at the variable nodes, a hard decision per iteration and
early exit on a zero syndrome.  Positive LLR means bit 0 is more
likely.  Message magnitudes are clamped to CLAMP_LLR before the tanh to
keep the log-domain transform finite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import SparseBinMatrix

CLAMP_LLR = 30.0
_MIN_MAG = 1e-12


@dataclass
class DecodeResult:
    hard_bits: np.ndarray
    iterations_used: int
    converged: bool


class _EdgeStructure:
    """Edge-parallel view of H, sorted by check node."""

    def __init__(self, H: SparseBinMatrix) -> None:
        indptr, indices = H.csr()
        deg = np.diff(indptr)
        nonempty = np.flatnonzero(deg > 0)
        self.var = np.concatenate(
            [H.row_support[r] for r in nonempty]
        ).astype(np.int64) if nonempty.size else np.empty(0, dtype=np.int64)
        self.deg = deg[nonempty]
        self.starts = np.zeros(len(nonempty), dtype=np.int64)
        np.cumsum(self.deg[:-1], out=self.starts[1:])
        self.seg = np.repeat(np.arange(len(self.deg)), self.deg)
        self.n = H.cols


def _edges(H: SparseBinMatrix) -> _EdgeStructure:
    if H._spa_edges is None:
        H._spa_edges = _EdgeStructure(H)
    return H._spa_edges


def _phi(x: np.ndarray) -> np.ndarray:
    # -log(tanh(x/2)), self-inverse on (0, inf); input is pre-clamped.
    return -np.log(np.tanh(0.5 * x))


def spa_decode(H: SparseBinMatrix, channel_llr, max_iter: int = 100) -> DecodeResult:
    """Decode one frame of channel LLRs against H."""
    llr = np.asarray(channel_llr, dtype=np.float64)
    if llr.shape != (H.cols,):
        raise ValueError(f"expected {H.cols} LLRs, got shape {llr.shape}")
    if not np.all(np.isfinite(llr)):
        raise ValueError("channel LLRs must be finite")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")

    es = _edges(H)
    if es.var.size == 0:
        # No constraints: the channel decision already satisfies H.
        return DecodeResult((llr < 0).astype(np.uint8), 1, True)

    seg = es.seg
    c2v = np.zeros(es.var.size)
    posterior = llr
    hard = (llr < 0).astype(np.uint8)
    for it in range(1, max_iter + 1):
        v2c = np.clip(posterior[es.var] - c2v, -CLAMP_LLR, CLAMP_LLR)
        mag = np.maximum(np.abs(v2c), _MIN_MAG)
        alpha = _phi(mag)
        alpha_sum = np.add.reduceat(alpha, es.starts)
        neg = v2c < 0
        parity = np.add.reduceat(neg, es.starts).astype(np.int64) & 1
        excl = np.maximum(alpha_sum[seg] - alpha, _MIN_MAG)
        sign = 1.0 - 2.0 * ((parity[seg] ^ neg).astype(np.float64))
        c2v = np.clip(sign * _phi(excl), -CLAMP_LLR, CLAMP_LLR)
        posterior = llr + np.bincount(es.var, weights=c2v, minlength=es.n)
        hard = (posterior < 0).astype(np.uint8)
        unsat = np.add.reduceat(hard[es.var].astype(np.int64), es.starts) & 1
        if not unsat.any():
            return DecodeResult(hard, it, True)
    return DecodeResult(hard, max_iter, False)
