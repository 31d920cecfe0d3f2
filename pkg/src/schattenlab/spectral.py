"""Singular values, Schatten sums on nested windows, and convergence verdicts.

Convergence of sum s_n^r is judged from partial sums on a dyadic ladder of
cutoffs Lambda_0 2^k.  The shell sums D_k = P(Lambda_{k+1}) - P(Lambda_k)
behave like 2^{e k}; the fitted shell exponent e decides:

* e <= converge_below: convergent;
* e >= diverge_above: divergent;
* otherwise, e >= -log_growth: divergent (shells do not decay, so the
  partial sums grow at least like log Lambda), unless e < 0 and the shells
  are exactly geometric (half-slopes within ``geometric_rel`` * |e| of each
  other): such a series converges, but too slowly to tell apart from
  logarithmic growth on the ladder, so it is inconclusive;
* otherwise the shells decay slowly.  They count as convergent when the
  decay is geometric, i.e. the slopes fitted on the first and second half
  of the shells agree within ``curvature`` and the late slope is below
  -log_growth; anything else is inconclusive.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import (
    ContractError,
    InsufficientDataError,
    NumericError,
    ParameterError,
)
from .groups import GroupDescriptor
from .quantize import OperatorMatrix, assemble_matrix
from .symbols import MatrixSymbol, singular_table
from .windows import TruncationWindow, make_window


@dataclass(frozen=True)
class VerdictThresholds:
    converge_below: float = -0.25
    diverge_above: float = 0.25
    log_growth: float = 0.05
    curvature: float = 0.05
    geometric_rel: float = 0.1
    min_windows: int = 4
    ladder_ratio: float = 2.0
    # shells below zero_tol * max|partial| count as empty
    zero_tol: float = 1e-13

    def to_dict(self) -> dict:
        return asdict(self)


DEFAULT_THRESHOLDS = VerdictThresholds()


@dataclass(frozen=True)
class SingularSpectrum:
    """Singular values stored as distinct values with multiplicities."""

    distinct: np.ndarray
    multiplicity: np.ndarray
    source: str
    window: TruncationWindow | None = None

    @classmethod
    def from_values(cls, values, source, window=None, multiplicity=None):
        v = np.asarray(values, dtype=float)
        mult = np.ones(v.shape, dtype=np.int64) if multiplicity is None else np.asarray(multiplicity, dtype=np.int64)
        order = np.argsort(-v, kind="stable")
        return cls(v[order], mult[order], source, window)

    @property
    def values(self) -> np.ndarray:
        """Expanded nonincreasing sequence s_1 >= s_2 >= ..."""
        return np.repeat(self.distinct, self.multiplicity)

    def __len__(self):
        return int(np.sum(self.multiplicity))


def singular_values(A: OperatorMatrix) -> SingularSpectrum:
    if not np.all(np.isfinite(A.entries)):
        raise NumericError("operator matrix has non-finite entries")
    sv = np.linalg.svd(A.entries, compute_uv=False)
    return SingularSpectrum.from_values(sv, "matrix_svd", A.window)


def invariant_singular_values(s: MatrixSymbol, w: TruncationWindow) -> SingularSpectrum:
    """Singular values of sigma(xi), each repeated d_xi times, over the window."""
    if not s.invariant:
        raise ContractError(f"{s.label} is not left-invariant")
    x0 = np.zeros((1, s.group.point_size))
    table = singular_table(s, x0, w)
    if isinstance(table, np.ndarray):
        # sigma = f I_d: |f| with multiplicity d * d
        return SingularSpectrum.from_values(table[0], "invariant_per_dual", w,
                                            multiplicity=w.dims ** 2)
    vals, mult = [], []
    for d, sv in zip(w.dims, table):
        vals.append(sv[0])
        mult.append(np.full(len(sv[0]), d))
    return SingularSpectrum.from_values(np.concatenate(vals), "invariant_per_dual", w,
                                        multiplicity=np.concatenate(mult))


def schatten_partial(spec: SingularSpectrum, r: float) -> float:
    """sum s_n^r over the spectrum."""
    r = float(r)
    if not r > 0:
        raise ParameterError("Schatten exponent must be positive")
    if np.isinf(r):
        raise ParameterError("the partial sum is undefined for r = inf; use schatten_norm")
    return float(np.sum(spec.multiplicity * spec.distinct ** r))


def schatten_norm(spec: SingularSpectrum, r: float) -> float:
    """(sum s_n^r)^{1/r}; r = inf gives the operator norm."""
    r = float(r)
    if np.isinf(r) and r > 0:
        return float(spec.distinct.max()) if len(spec.distinct) else 0.0
    return schatten_partial(spec, r) ** (1.0 / r)


# ---------------------------------------------------------------- verdicts

def check_ladder(ladder, th: VerdictThresholds = DEFAULT_THRESHOLDS):
    lad = np.asarray(ladder, dtype=float)
    if len(lad) < th.min_windows:
        raise InsufficientDataError(
            f"need at least {th.min_windows} nested windows, got {len(lad)}")
    if np.any(np.diff(lad) <= 0):
        raise ParameterError("ladder must be strictly increasing")
    ratio = lad[1:] / lad[:-1]
    if np.any(np.abs(ratio - th.ladder_ratio) > 1e-9 * th.ladder_ratio):
        raise ParameterError(f"ladder must be geometric with ratio {th.ladder_ratio:g}")
    return lad


def _slope(k, y):
    if len(k) < 2:
        return float("nan")
    return float(np.polyfit(k, y, 1)[0])


def analyse_partials(partials, th: VerdictThresholds = DEFAULT_THRESHOLDS) -> dict:
    """Shell exponent, verdict and the intermediate numbers behind them."""
    check_ladder([c for c, _ in partials], th)
    vals = np.array([v for _, v in partials], dtype=float)
    if not np.all(np.isfinite(vals)):
        raise NumericError("partial sums must be finite")
    shells = np.diff(vals)
    scale = float(np.max(np.abs(vals))) if len(vals) else 0.0
    positive = shells > th.zero_tol * scale
    k = np.arange(len(shells), dtype=float)
    out = {"shells": shells.tolist(), "early_slope": None, "late_slope": None,
           "rule": None, "verdict": None}
    if np.count_nonzero(positive) < 2:
        if not positive[-1]:
            out.update(exponent=float("-inf"), verdict="convergent", rule="empty tail")
        else:
            out.update(exponent=float("nan"), verdict="inconclusive", rule="too few shells")
        return out
    kk, yy = k[positive], np.log2(shells[positive])
    e = _slope(kk, yy)
    out["exponent"] = e
    if e <= th.converge_below:
        out.update(verdict="convergent", rule="shell decay")
    elif e >= th.diverge_above:
        out.update(verdict="divergent", rule="shell growth")
    else:
        half = len(kk) // 2
        early, late = _slope(kk[:half + 1], yy[:half + 1]), _slope(kk[half:], yy[half:])
        out.update(early_slope=early, late_slope=late)
    if out["verdict"] is not None:
        return out
    if e >= -th.log_growth:
        exact = len(kk) >= 4 and e < 0 and late < 0 and abs(late - early) <= th.geometric_rel * abs(e)
        out.update(verdict="inconclusive" if exact else "divergent",
                   rule="geometric decay below resolution" if exact else "log growth")
    else:
        geometric = (len(kk) >= 4 and late <= -th.log_growth
                     and abs(late - early) <= th.curvature)
        out.update(verdict="convergent" if geometric else "inconclusive",
                   rule="slow geometric decay" if geometric else "slow decay")
    return out


def tail_exponent(partials, thresholds: VerdictThresholds = DEFAULT_THRESHOLDS):
    """(shell exponent, verdict) for partial sums on a dyadic ladder."""
    a = analyse_partials(partials, thresholds)
    return a["exponent"], a["verdict"]


@dataclass(frozen=True)
class SchattenReport:
    r: float
    partials: list
    fitted_tail_exponent: float
    verdict: str
    extrapolated_value: float | None
    thresholds: VerdictThresholds = DEFAULT_THRESHOLDS
    details: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    @property
    def ladder(self) -> list:
        return [c for c, _ in self.partials]

    @property
    def final_value(self) -> float:
        return self.partials[-1][1]

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "ladder": self.ladder,
            "partials": [[c, v] for c, v in self.partials],
            "exponent": self.fitted_tail_exponent,
            "verdict": self.verdict,
            "extrapolated_value": self.extrapolated_value,
            "config_thresholds": self.thresholds.to_dict(),
            "details": self.details,
            "provenance": self.provenance,
        }


def report_from_partials(partials, r: float, thresholds=DEFAULT_THRESHOLDS,
                         provenance=None) -> SchattenReport:
    partials = [(float(c), float(v)) for c, v in partials]
    a = analyse_partials(partials, thresholds)
    e, verdict = a["exponent"], a["verdict"]
    extrap = None
    if verdict == "convergent":
        if np.isneginf(e):
            extrap = partials[-1][1]
        else:
            # geometric tail beyond the last window
            q = 2.0 ** e
            extrap = partials[-1][1] + a["shells"][-1] * q / (1.0 - q)
    return SchattenReport(float(r), partials, e, verdict, extrap, thresholds, a,
                          provenance or {})


def cumulative_partials(brackets, summands, ladder) -> list:
    """Partial sums of per-dual summands for each cutoff of the ladder."""
    br = np.asarray(brackets)
    summ = np.asarray(summands, dtype=float)
    order = np.argsort(br, kind="stable")
    br_sorted, csum = br[order], np.cumsum(summ[order])
    out = []
    for c in ladder:
        n = np.searchsorted(br_sorted, c * (1.0 + 1e-12), side="right")
        out.append((float(c), float(csum[n - 1]) if n else 0.0))
    return out


def invariant_schatten_report(s: MatrixSymbol, r: float, ladder,
                              thresholds=DEFAULT_THRESHOLDS) -> SchattenReport:
    """sum s_n^r of Op(s) on every window of the ladder (invariant symbols)."""
    if not s.invariant:
        raise ContractError(f"{s.label} is not left-invariant")
    ladder = check_ladder(ladder, thresholds)
    w = make_window(s.group, ladder[-1])
    table = singular_table(s, np.zeros((1, s.group.point_size)), w)
    if isinstance(table, np.ndarray):
        summ = w.dims ** 2 * table[0] ** r
    else:
        summ = np.array([d * np.sum(sv[0] ** r) for d, sv in zip(w.dims, table)])
    parts = cumulative_partials(w.brackets, summ, ladder)
    return report_from_partials(parts, r, thresholds,
                                {"route": "invariant_per_dual", "symbol": s.label})


def matrix_schatten_report(s: MatrixSymbol, r: float, ladder,
                           thresholds=DEFAULT_THRESHOLDS) -> SchattenReport:
    """Same as above but from the SVD of each assembled finite section."""
    ladder = check_ladder(ladder, thresholds)
    parts = []
    for c in ladder:
        A = assemble_matrix(s, make_window(s.group, c))
        parts.append((c, schatten_partial(singular_values(A), r)))
    return report_from_partials(parts, r, thresholds,
                                {"route": "matrix_svd", "symbol": s.label})


def schatten_report(s: MatrixSymbol, r: float, ladder,
                    thresholds=DEFAULT_THRESHOLDS) -> SchattenReport:
    if s.invariant:
        return invariant_schatten_report(s, r, ladder, thresholds)
    return matrix_schatten_report(s, r, ladder, thresholds)


def lemma_series(g: GroupDescriptor, s: float, ladder,
                 thresholds=DEFAULT_THRESHOLDS) -> SchattenReport:
    """Partial sums of sum_xi d_xi^2 <xi>^{-s}; finite iff s > dim G."""
    ladder = check_ladder(ladder, thresholds)
    w = make_window(g, ladder[-1])
    summ = w.dims.astype(float) ** 2 * w.brackets ** (-float(s))
    parts = cumulative_partials(w.brackets, summ, ladder)
    return report_from_partials(parts, 1.0, thresholds,
                                {"route": "lemma_series", "group": g.describe(), "s": float(s)})


def dyadic_ladder(start: float, stop: float) -> list:
    """start, 2 start, 4 start, ... up to stop (inclusive)."""
    out = []
    c = float(start)
    while c <= stop * (1 + 1e-12):
        out.append(c)
        c *= 2.0
    return out
