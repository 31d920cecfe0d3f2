"""The ten acceptance criteria at their stated tolerances and time budgets."""
import json
import time
from pathlib import Path

import mpmath
import numpy as np

from schattenlab import (
    SU2,
    Torus,
    assemble_matrix,
    builtin_bessel,
    builtin_coefficient,
    builtin_dyadic_atypical,
    character,
    condition4_sum,
    cosphere_average,
    dyadic_ladder,
    elliptic_flag,
    make_window,
    regularity_criterion,
    russo_check,
    schatten_report,
    singular_values,
    symbol_schatten_dual_norm,
)
from schattenlab.cli import main
from schattenlab.criteria import (
    hausdorff_young_check,
    random_band_limited,
    random_invariant_torus_symbol,
    sharp_difference_errors,
)
from schattenlab.groups import haar_quadrature, resolution_for
from schattenlab.quantize import FourierCoefficients, fourier_inverse, symbol_hs_integral

ROOT = Path(__file__).resolve().parents[1]
T1, T2, S = Torus(1), Torus(2), SU2()


def test_01_bessel_trace_on_circle(acceptance_log):
    mpmath.mp.dps = 30
    oracle = float(mpmath.pi * mpmath.coth(mpmath.pi))
    assert abs(oracle - 3.153348) < 5e-7
    t = time.perf_counter()
    w = make_window(T1, 2000)
    partial = symbol_schatten_dual_norm(builtin_bessel(T1, -1.0), np.zeros(1), 2, w) ** 2
    dt = time.perf_counter() - t
    ok = abs(partial - 3.153348) <= 2e-3 and dt < 1
    acceptance_log(1, "Bessel trace on T^1", ok,
                   f"partial {partial:.7f} vs oracle {oracle:.7f}", dt)
    assert ok


def test_02_plancherel_hs_equivalence(acceptance_log):
    t = time.perf_counter()
    s = builtin_coefficient(T1, character(T1, (1,)), builtin_bessel(T1, -1.0))
    A = assemble_matrix(s, make_window(T1, 16))
    hs_svd = float(np.sum(singular_values(A).values ** 2))
    hs_sym = symbol_hs_integral(A)
    dt = time.perf_counter() - t
    rel = abs(hs_svd - hs_sym) / hs_svd
    ok = rel <= 1e-8 and dt < 5
    acceptance_log(2, "Plancherel/HS equivalence", ok,
                   f"SVD {hs_svd:.15g}, symbol {hs_sym:.15g}, rel {rel:.1e}", dt)
    assert ok


def test_03_threshold_detection(acceptance_log):
    t = time.perf_counter()
    lad = dyadic_ladder(4, 512)
    cases = [(T2, -1.3, 2, "convergent"), (T2, -0.7, 2, "divergent"),
             (S, -3.5, 1, "convergent"), (S, -2.5, 1, "divergent")]
    got = [schatten_report(builtin_bessel(g, m), r, lad).verdict for g, m, r, _ in cases]
    dt = time.perf_counter() - t
    wrong = sum(v != want for v, (*_, want) in zip(got, cases))
    ok = wrong == 0 and dt < 60
    acceptance_log(3, "order threshold detection", ok,
                   f"verdicts {got}, misclassified {wrong}", dt)
    assert ok


def test_04_atypical_reproduction(acceptance_log):
    t = time.perf_counter()
    lad = dyadic_ladder(4, 512)
    a = builtin_dyadic_atypical(1, 0.5)
    verdicts = [condition4_sum(a, r, lad).verdict for r in (0.5, 1.0, 2.0)]
    flag, margin = elliptic_flag(a, make_window(T1, 512))
    err = max(sharp_difference_errors(0.5, 1, range(1, 11)))
    dt = time.perf_counter() - t
    ok = (verdicts == ["convergent"] * 3 and not flag and margin == 0.0
          and err <= 1e-15 and dt < 5)
    acceptance_log(4, "atypical dyadic operator", ok,
                   f"condition4_sum {verdicts}, elliptic {flag}, margin {margin}, "
                   f"sharp error {err:.1e}", dt)
    assert ok


def test_05_invariant_spectrum_oracle_su2(acceptance_log):
    t = time.perf_counter()
    w = make_window(S, 4)
    A = assemble_matrix(builtin_bessel(S, -1.0), w, method="quadrature")
    sv = singular_values(A).values
    want = []
    for j2 in range(0, 10):
        l = j2 / 2
        if 1 + l * (l + 1) <= 16:
            want += [(1 + l * (l + 1)) ** -0.5] * (j2 + 1) ** 2
    want = np.sort(want)[::-1]
    dt = time.perf_counter() - t
    err = np.abs(sv - want).max() if sv.shape == want.shape else np.inf
    ok = err <= 1e-9 and dt < 30
    acceptance_log(5, "SU(2) invariant spectrum", ok,
                   f"{len(sv)} singular values, max error {err:.1e}", dt)
    assert ok


def test_06_russo_suite(acceptance_log):
    t = time.perf_counter()
    rng = np.random.default_rng(20240611)
    w = make_window(T1, 32)
    outs = [russo_check(random_invariant_torus_symbol(1, rng, 2.0, w.cutoff), 1.5, w)
            for _ in range(20)]
    dt = time.perf_counter() - t
    bad = [o for o in outs if not (o.evidence["self_adjoint"] and o.lhs <= o.rhs + 1e-9)]
    worst = max(o.lhs / o.rhs for o in outs)
    ok = not bad and all(o.verdict == "satisfied" for o in outs) and dt < 10
    acceptance_log(6, "Russo bound, 20 random self-adjoint symbols", ok,
                   f"violations {len(bad)}, worst ratio lhs/rhs {worst:.4f}", dt)
    assert ok


def test_07_regularity_consistency(acceptance_log):
    t = time.perf_counter()
    lad = dyadic_ladder(4, 128)
    rows = []
    for m in (-2.0, -3.0):
        s = builtin_coefficient(T1, character(T1, (1,)), builtin_bessel(T1, m))
        o = regularity_criterion(s, 2, 1, lad)
        rows.append((m, o.evidence["criterion_verdict"], o.evidence["operator_verdict"], o.verdict))
    dt = time.perf_counter() - t
    ok = all(c == "convergent" and a == "convergent" and v == "satisfied" for _, c, a, v in rows)
    ok = ok and dt < 10
    acceptance_log(7, "regularity criterion consistency", ok,
                   "; ".join(f"m={m:g}: criterion {c}, S_1 partials {a}" for m, c, a, _ in rows), dt)
    assert ok


def test_08_cosphere_average(acceptance_log):
    t = time.perf_counter()
    one = cosphere_average(lambda x, e: np.ones(len(x)), T2)
    odd = cosphere_average(lambda x, e: e[:, 0] / np.linalg.norm(e, axis=1), T2)
    sq = cosphere_average(lambda x, e: e[:, 0] ** 2, T2)
    dt = time.perf_counter() - t
    ok = one == 1.0 and abs(odd) <= 1e-10 and abs(sq - 0.5) <= 1e-8 and dt < 1
    acceptance_log(8, "co-sphere average", ok,
                   f"1 -> {one.real!r}, eta1/|eta| -> {abs(odd):.1e}, eta1^2 -> {sq.real:.15f}", dt)
    assert ok


def test_09_hausdorff_young(acceptance_log):
    t = time.perf_counter()
    rng = np.random.default_rng(7)
    violations, checks, worst = 0, 0, 0.0
    for g, cut in ((T1, 8.0), (S, 3.0)):
        w = make_window(g, cut)
        grid = haar_quadrature(g, resolution_for(2 * w.band))
        for _ in range(50):
            c = random_band_limited(w, rng)
            f = fourier_inverse(FourierCoefficients.from_vector(w, c), grid.nodes)
            for p in (1.0, 4.0 / 3.0, 2.0):
                o = hausdorff_young_check(f, w, grid, p)
                checks += 1
                violations += o.verdict != "satisfied"
                worst = max(worst, o.lhs / o.rhs)
    dt = time.perf_counter() - t
    ok = violations == 0 and dt < 20
    acceptance_log(9, "Hausdorff-Young", ok,
                   f"{checks} checks, violations {violations}, worst ratio {worst:.6f}", dt)
    assert ok


def test_10_determinism(acceptance_log, tmp_path):
    t = time.perf_counter()
    cfg = ROOT / "configs" / "reference_verify.json"
    codes = [main(["verify", "--config", str(cfg), "--out", str(tmp_path / d)]) for d in ("a", "b")]
    a = (tmp_path / "a" / "criteria.json").read_bytes()
    b = (tmp_path / "b" / "criteria.json").read_bytes()
    dt = time.perf_counter() - t
    summary = json.loads(a)["summary"]
    ok = a == b and codes == [0, 0]
    acceptance_log(10, "deterministic verify output", ok,
                   f"{len(a)} bytes identical: {a == b}, exit codes {codes}, summary {summary}", dt)
    assert ok
