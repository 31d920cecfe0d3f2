"""Finite dual windows {[xi] : <xi> <= cutoff} and the Peter-Weyl basis order."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .groups import DualPoint, GroupDescriptor, dual_arrays


@dataclass(frozen=True, eq=False)
class TruncationWindow:
    """Dual points below a cutoff plus the induced basis numbering.

    Basis functions sqrt(d) xi_ij are numbered dual by dual in canonical
    order, and inside one dual row-major in (i, j).
    """

    group: GroupDescriptor
    cutoff: float
    indices: np.ndarray
    dims: np.ndarray
    eigenvalues: np.ndarray

    @cached_property
    def duals(self) -> list[DualPoint]:
        return [DualPoint(tuple(int(v) for v in k), int(d), float(e))
                for k, d, e in zip(self.indices, self.dims, self.eigenvalues)]

    @cached_property
    def brackets(self) -> np.ndarray:
        return np.sqrt(1.0 + self.eigenvalues)

    @cached_property
    def offsets(self) -> np.ndarray:
        sq = self.dims ** 2
        return np.concatenate([[0], np.cumsum(sq)[:-1]]).astype(int)

    @property
    def total_dim(self) -> int:
        return int(np.sum(self.dims ** 2))

    @cached_property
    def band(self) -> float:
        """Largest mode among the window's dual points."""
        if self.group.is_torus:
            return float(np.max(np.abs(self.indices)))
        return float(np.max(self.indices)) / 2.0

    @cached_property
    def _lookup(self) -> dict:
        return {tuple(int(v) for v in k): pos for pos, k in enumerate(self.indices)}

    def __len__(self):
        return len(self.dims)

    def position(self, xi: DualPoint) -> int:
        """Position of ``xi`` in canonical order, or -1 when outside."""
        return self._lookup.get(tuple(xi.index), -1)

    def column(self, pos: int, i: int, j: int) -> int:
        d = int(self.dims[pos])
        return int(self.offsets[pos]) + i * d + j

    def basis_labels(self) -> list[tuple]:
        out = []
        for k, d in zip(self.indices, self.dims):
            idx = tuple(int(v) for v in k)
            out.extend((idx, i, j) for i in range(d) for j in range(d))
        return out

    def within(self, cutoff: float) -> np.ndarray:
        """Boolean mask of dual points with <xi> <= cutoff."""
        return self.eigenvalues <= cutoff * cutoff * (1.0 + 1e-12) - 1.0

    def describe(self) -> dict:
        return {
            "group": self.group.describe(),
            "cutoff": float(self.cutoff),
            "num_duals": len(self),
            "total_dim": self.total_dim,
            "ordering": "duals lexicographic on index; (i, j) row-major inside each dual",
        }


def make_window(g: GroupDescriptor, cutoff: float) -> TruncationWindow:
    ks, dims, lam = dual_arrays(g, cutoff)
    return TruncationWindow(g, float(cutoff), ks, dims, lam)


def shell_cutoffs(cutoff: float) -> list[float]:
    """Dyadic cutoffs 1, 2, 4, ... below ``cutoff`` followed by ``cutoff``."""
    out = []
    c = 1.0
    while c < cutoff:
        out.append(c)
        c *= 2.0
    out.append(float(cutoff))
    return out
