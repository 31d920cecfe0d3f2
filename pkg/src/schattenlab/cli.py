"""Command line: spectrum | quantize | verify | atypical | series.

Exit codes: 0 pass, 1 a criterion was violated, 2 numerical validity
failure (aliasing, too few windows, non-finite numbers), 3 configuration
error.  Errors are reported on stderr as a one-line JSON object.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import criteria as crit
from .config import (
    RunConfig,
    config_from_dict,
    parse_function,
    parse_group,
    parse_ladder,
    parse_symbol,
)
from .errors import (
    AliasingError,
    ConfigurationError,
    InsufficientDataError,
    LabError,
    NumericError,
    ParameterError,
)
from .groups import Torus, dual_point, haar_quadrature, resolution_for
from .io import export_operator, write_csv, write_json
from .quantize import (
    FourierCoefficients,
    apply_op,
    assemble_matrix,
    default_grid,
    fourier_inverse,
)
from .spectral import (
    invariant_singular_values,
    lemma_series,
    schatten_report,
    singular_values,
)
from .windows import make_window

EXIT_OK, EXIT_VIOLATED, EXIT_NUMERIC, EXIT_CONFIG = 0, 1, 2, 3
VERSION = "0.1.0"


def _provenance(cfg: RunConfig, command: str) -> dict:
    return dict(cfg.provenance(), command=command, version=VERSION)


# ---------------------------------------------------------------- spectrum

def cmd_spectrum(cfg: RunConfig, out: Path) -> int:
    s = cfg.symbol_obj()
    cfg.check_verdict_ladder()
    reports = [schatten_report(s, r, cfg.ladder, cfg.thresholds) for r in cfg.r]
    w = make_window(cfg.group, cfg.cutoff or cfg.ladder[-1])
    spec = invariant_singular_values(s, w) if s.invariant else singular_values(assemble_matrix(s, w))
    rows, rank = [], 1
    for v, mult in zip(spec.distinct, spec.multiplicity):
        rows.append((rank, float(v), int(mult)))
        rank += int(mult)
    write_csv(out / "singular_values.csv", ["rank", "value", "multiplicity"], rows)
    write_json(out / "schatten.json", {
        "provenance": dict(_provenance(cfg, "spectrum"), window=w.describe(),
                           singular_value_source=spec.source),
        "reports": reports,
    })
    return EXIT_OK


# ---------------------------------------------------------------- quantize

def cmd_quantize(cfg: RunConfig, out: Path) -> int:
    s = cfg.symbol_obj()
    if cfg.function is None:
        raise ConfigurationError("quantize needs a 'function' entry")
    f = parse_function(cfg.function, cfg.group)
    w = make_window(cfg.group, cfg.cutoff or cfg.ladder[0])
    for idx, *_ in f.terms:
        xi = dual_point(cfg.group, idx)
        if w.position(xi) < 0:
            raise AliasingError(f"input mode {idx} lies outside the window <xi> <= {w.cutoff:g}")
    res = cfg.extra.get("resolution")
    grid = default_grid(w) if res is None else haar_quadrature(cfg.group, int(res))
    samples = f(grid.nodes)
    vals = apply_op(s, samples, w, grid)
    rows = [tuple(float(c) for c in x) + (float(v.real), float(v.imag))
            for x, v in zip(grid.nodes, vals)]
    coords = [f"x{i}" for i in range(cfg.group.point_size)]
    write_csv(out / "apply.csv", coords + ["re", "im"], rows)
    A = assemble_matrix(s, w)
    export_operator(A, out / "operator")
    write_json(out / "quantize.json", {
        "provenance": dict(_provenance(cfg, "quantize"), window=w.describe(),
                           grid_resolution=grid.resolution, function=cfg.function,
                           matrix_resolution=A.resolution),
    })
    return EXIT_OK


# ---------------------------------------------------------------- verify

def _cosphere_principal(name: str):
    table = {
        "one": lambda x, e: np.ones(len(x)),
        "eta1": lambda x, e: e[:, 0] / np.linalg.norm(e, axis=1),
        "eta1_sq": lambda x, e: e[:, 0] ** 2,
    }
    if name not in table:
        raise ParameterError(f"unknown principal symbol {name!r}")
    return table[name]


def run_criterion(spec: dict, cfg: RunConfig, position: int) -> list:
    """Evaluate one criteria entry; returns a list of outcomes."""
    if not isinstance(spec, dict) or "id" not in spec:
        raise ConfigurationError(f"criterion entry {spec!r} needs an 'id'")
    cid = spec["id"]
    g = parse_group(spec["group"]) if "group" in spec else cfg.group
    ladder = parse_ladder(spec["ladder"]) if "ladder" in spec else cfg.ladder
    th = cfg.thresholds
    rng = np.random.default_rng([cfg.seed, position])

    def sym():
        return parse_symbol(spec.get("symbol", cfg.symbol), g)

    if cid == "order_threshold_sweep":
        groups = [parse_group(x) for x in spec.get("groups", [g])]
        out = []
        for gg in groups:
            out += crit.order_threshold_sweep(gg, spec.get("r", (0.5, 1.0, 2.0, 3.0)),
                                              spec.get("offsets", (-0.3, 0.3)), ladder, th)
        return out
    if cid == "schatten_claim":
        return [crit.schatten_claim(sym(), float(spec["r"]), bool(spec["member"]), ladder, th)]
    if cid == "russo":
        return [crit.russo_check(sym(), float(spec["p"]), make_window(g, float(spec["cutoff"])))]
    if cid == "russo_random":
        n = int(spec.get("n", 1))
        w = make_window(Torus(n), float(spec.get("cutoff", 32)))
        return [crit.russo_check(crit.random_invariant_torus_symbol(n, rng, cutoff=w.cutoff),
                                 float(spec.get("p", 1.5)), w)
                for _ in range(int(spec.get("trials", 20)))]
    if cid == "regularity":
        return [crit.regularity_criterion(sym(), float(spec["N"]), float(spec["p"]), ladder,
                                          thresholds=th)]
    if cid == "atypical":
        return [crit.atypical_reproduction(float(spec.get("kappa", 0.5)), int(spec.get("n", 1)),
                                           spec.get("r", (0.5, 1.0, 2.0)), ladder, th)]
    if cid == "cosphere":
        name = spec["principal"]
        return [crit.cosphere_outcome(_cosphere_principal(name), Torus(int(spec.get("n", 2))),
                                      name, spec.get("expected"), float(spec.get("tol", 1e-10)),
                                      int(spec.get("sphere_resolution", 32)))]
    if cid == "elliptic":
        return [crit.elliptic_outcome(sym(), make_window(g, float(spec.get("cutoff", ladder[-1]))),
                                      spec.get("expected"))]
    if cid == "hausdorff_young":
        w = make_window(g, float(spec.get("cutoff", 4)))
        grid = haar_quadrature(g, resolution_for(2 * w.band))
        out = []
        for p in spec.get("p", [1.0, 4.0 / 3.0, 2.0]):
            for _ in range(int(spec.get("trials", 10))):
                c = crit.random_band_limited(w, rng)
                f = fourier_inverse(FourierCoefficients.from_vector(w, c), grid.nodes)
                out.append(crit.hausdorff_young_check(f, w, grid, float(p)))
        return out
    raise ConfigurationError(f"unknown criterion id {cid!r}")


def cmd_verify(cfg: RunConfig, out: Path) -> int:
    outcomes = []
    for i, spec in enumerate(cfg.criteria):
        outcomes += run_criterion(spec, cfg, i)
    counts = {v: sum(o.verdict == v for o in outcomes)
              for v in (crit.SATISFIED, crit.VIOLATED, crit.INCONCLUSIVE)}
    write_json(out / "criteria.json", {
        "provenance": dict(_provenance(cfg, "verify"), criteria=cfg.criteria),
        "summary": counts,
        "outcomes": outcomes,
    })
    return EXIT_VIOLATED if counts[crit.VIOLATED] else EXIT_OK


# ---------------------------------------------------------------- presets

def cmd_atypical(cfg: RunConfig, out: Path) -> int:
    kappa = float(cfg.extra.get("kappa", 0.5))
    r_values = cfg.extra.get("r_values", cfg.r if cfg.r != [1.0] else [0.5, 1.0, 2.0])
    n = cfg.group.n if cfg.group.is_torus else 1
    o = crit.atypical_reproduction(kappa, n, r_values, cfg.ladder, cfg.thresholds)
    write_json(out / "atypical.json", {"provenance": _provenance(cfg, "atypical"), "outcome": o})
    return EXIT_VIOLATED if o.verdict == crit.VIOLATED else EXIT_OK


def cmd_series(cfg: RunConfig, out: Path) -> int:
    groups = [parse_group(x) for x in cfg.extra.get("groups", ["T1", "T2", "SU2"])]
    rows = []
    for g in groups:
        s_values = cfg.extra.get("s", [g.dimension - 0.5, g.dimension + 0.5])
        for s in s_values:
            rep = lemma_series(g, float(s), cfg.ladder, cfg.thresholds)
            rows.append({"group": g.describe(), "s": float(s),
                         "predicted": "convergent" if s > g.dimension else "divergent",
                         "report": rep})
    mismatches = sum(r["report"].verdict in ("convergent", "divergent")
                     and r["report"].verdict != r["predicted"] for r in rows)
    write_json(out / "series.json", {"provenance": _provenance(cfg, "series"),
                                     "mismatches": mismatches, "series": rows})
    return EXIT_VIOLATED if mismatches else EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "quantize": cmd_quantize,
    "verify": cmd_verify,
    "atypical": cmd_atypical,
    "series": cmd_series,
}


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--out", help="output directory (overrides config 'output')")
    common.add_argument("--seed", type=int, help="seed for randomized suites")
    common.add_argument("--ladder", help="comma-separated cutoffs, e.g. 4,8,16,32")
    parser = argparse.ArgumentParser(prog="schattenlab",
                                     description="Schatten-class diagnostics for operators on tori and SU(2)")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "spectrum": "singular values and Schatten partial sums of one symbol",
        "quantize": "apply Op(sigma) to a function and export the finite section",
        "verify": "run a list of criteria",
        "atypical": "dyadic non-elliptic example in every Schatten class",
        "series": "sum d^2 <xi>^{-s} threshold sweeps",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text)
    return parser


def _error(exc: Exception, code: int) -> int:
    print(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}),
          file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = {}
        if args.config:
            raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
        if args.seed is not None:
            raw["seed"] = args.seed
        if args.ladder:
            raw["ladder"] = args.ladder
        if args.out:
            raw["output"] = args.out
        cfg = config_from_dict(raw)
        out = Path(cfg.output)
        out.mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](cfg, out)
    except (AliasingError, InsufficientDataError, NumericError) as exc:
        return _error(exc, EXIT_NUMERIC)
    except (LabError, OSError, json.JSONDecodeError, TypeError, ValueError, KeyError) as exc:
        return _error(exc, EXIT_CONFIG)


if __name__ == "__main__":
    sys.exit(main())
