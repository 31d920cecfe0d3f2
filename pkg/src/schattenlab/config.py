"""Run configuration: group, symbol and function specs from JSON.

Symbol specs are dicts (``{"name": "bessel", "m": -2}``) or short strings::

    bessel{-2}            <xi>^m
    dyadic{1,0.5}         dyadic ray symbol on T^n with decay kappa
    multiplier:identity   identity / zero / laplacian
    coeff{1}:bessel{-1}   e^{i k.x} times a base symbol (torus)

Groups are ``"T1"``, ``"T2"``, ..., ``"SU2"`` or ``{"kind": ..., "n": ...}``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigurationError
from .groups import SU2, GroupDescriptor, Torus
from .spectral import VerdictThresholds, check_ladder, dyadic_ladder
from .symbols import (
    GroupPolynomial,
    MatrixSymbol,
    builtin_bessel,
    builtin_coefficient,
    builtin_dyadic_atypical,
    character,
    named_multiplier,
)

_BRACED = re.compile(r"^(\w+)\{([^}]*)\}(?::(.+))?$")


def parse_group(spec) -> GroupDescriptor:
    if isinstance(spec, GroupDescriptor):
        return spec
    if isinstance(spec, dict):
        kind = spec.get("kind")
        if kind == "su2":
            return SU2()
        if kind == "torus":
            return Torus(int(spec.get("n", 1)))
        raise ConfigurationError(f"unknown group kind {kind!r}")
    if isinstance(spec, str):
        s = spec.replace("^", "").replace("(", "").replace(")", "").upper()
        if s == "SU2":
            return SU2()
        m = re.fullmatch(r"T(\d+)", s)
        if m:
            return Torus(int(m.group(1)))
    raise ConfigurationError(f"cannot parse group {spec!r}")


def _numbers(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"bad numeric list {text!r}") from exc


def parse_polynomial(g: GroupDescriptor, spec) -> GroupPolynomial:
    """``{"terms": [[index, i, j, re, im], ...]}`` or a list of such terms."""
    terms = spec["terms"] if isinstance(spec, dict) else spec
    out = []
    for t in terms:
        if len(t) not in (4, 5):
            raise ConfigurationError(f"polynomial term {t!r} needs index, i, j, re[, im]")
        idx = tuple(int(v) for v in (t[0] if isinstance(t[0], (list, tuple)) else [t[0]]))
        if len(idx) != g.index_size:
            raise ConfigurationError(f"index {idx} does not fit {g}")
        coef = complex(float(t[3]), float(t[4]) if len(t) == 5 else 0.0)
        out.append((idx, int(t[1]), int(t[2]), coef))
    return GroupPolynomial(g, tuple(out))


def parse_symbol(spec, g: GroupDescriptor) -> MatrixSymbol:
    if isinstance(spec, MatrixSymbol):
        return spec
    if isinstance(spec, str):
        return _symbol_from_string(spec.strip(), g)
    if not isinstance(spec, dict) or "name" not in spec:
        raise ConfigurationError(f"cannot parse symbol {spec!r}")
    name = spec["name"]
    try:
        if name == "bessel":
            return builtin_bessel(g, float(spec["m"]))
        if name == "dyadic":
            n = int(spec.get("n", g.n))
            if not g.is_torus or n != g.n:
                raise ConfigurationError("the dyadic symbol lives on the torus of matching dimension")
            return builtin_dyadic_atypical(n, float(spec["kappa"]))
        if name == "multiplier":
            return named_multiplier(g, spec["f"])
        if name == "coeff":
            base = parse_symbol(spec["base"], g)
            c = spec["c"]
            if isinstance(c, (dict, list)) and not (isinstance(c, list) and all(
                    isinstance(v, (int, float)) for v in c)):
                poly = parse_polynomial(g, c)
            else:
                poly = character(g, c if isinstance(c, list) else [c])
            return builtin_coefficient(g, poly, base)
    except KeyError as exc:
        raise ConfigurationError(f"symbol {name!r} is missing field {exc}") from exc
    raise ConfigurationError(f"unknown symbol {name!r}")


def _symbol_from_string(spec: str, g: GroupDescriptor) -> MatrixSymbol:
    if spec.startswith("multiplier:"):
        return named_multiplier(g, spec.split(":", 1)[1])
    m = _BRACED.match(spec)
    if not m:
        raise ConfigurationError(f"cannot parse symbol {spec!r}")
    name, args, rest = m.group(1), _numbers(m.group(2)), m.group(3)
    if name == "bessel" and len(args) == 1 and rest is None:
        return parse_symbol({"name": "bessel", "m": args[0]}, g)
    if name == "dyadic" and len(args) == 2 and rest is None:
        return parse_symbol({"name": "dyadic", "n": int(args[0]), "kappa": args[1]}, g)
    if name == "coeff" and rest is not None:
        return parse_symbol({"name": "coeff", "c": [int(a) for a in args], "base": rest}, g)
    raise ConfigurationError(f"cannot parse symbol {spec!r}")


def parse_function(spec, g: GroupDescriptor) -> GroupPolynomial:
    """Input functions for ``quantize``: ``character{k}`` or polynomial terms."""
    if isinstance(spec, str):
        m = _BRACED.match(spec.strip())
        if m and m.group(1) == "character" and m.group(3) is None:
            return character(g, [int(a) for a in _numbers(m.group(2))])
        raise ConfigurationError(f"cannot parse function {spec!r}")
    return parse_polynomial(g, spec)


def parse_ladder(spec) -> list[float]:
    if spec is None:
        return dyadic_ladder(4, 512)
    if isinstance(spec, str):
        spec = _numbers(spec)
    if isinstance(spec, dict):
        return dyadic_ladder(float(spec["start"]), float(spec["stop"]))
    lad = [float(c) for c in spec]
    if any(b <= a for a, b in zip(lad, lad[1:])):
        raise ConfigurationError("ladder must be strictly increasing")
    return lad


@dataclass(frozen=True)
class RunConfig:
    group: GroupDescriptor = field(default_factory=Torus)
    symbol: object = None
    ladder: list = field(default_factory=lambda: dyadic_ladder(4, 512))
    r: list = field(default_factory=lambda: [1.0])
    criteria: list = field(default_factory=list)
    output: str = "out"
    seed: int = 0
    thresholds: VerdictThresholds = field(default_factory=VerdictThresholds)
    function: object = None
    cutoff: float | None = None
    extra: dict = field(default_factory=dict)

    def symbol_obj(self) -> MatrixSymbol:
        if self.symbol is None:
            raise ConfigurationError("config has no symbol")
        return parse_symbol(self.symbol, self.group)

    def check_verdict_ladder(self):
        check_ladder(self.ladder, self.thresholds)

    def provenance(self) -> dict:
        return {
            "group": self.group.describe(),
            "symbol": self.symbol,
            "ladder": self.ladder,
            "seed": self.seed,
            "thresholds": self.thresholds.to_dict(),
        }


_KNOWN = {"group", "symbol", "ladder", "r", "criteria", "output", "seed", "thresholds",
          "function", "cutoff"}


def config_from_dict(d: dict) -> RunConfig:
    if not isinstance(d, dict):
        raise ConfigurationError("config must be a JSON object")
    try:
        th = VerdictThresholds(**d.get("thresholds", {}))
    except TypeError as exc:
        raise ConfigurationError(f"bad thresholds: {exc}") from exc
    r = d.get("r", [1.0])
    r = [float(v) for v in (r if isinstance(r, list) else [r])]
    crit = d.get("criteria", [])
    if not isinstance(crit, list):
        raise ConfigurationError("criteria must be a list")
    cutoff = d.get("cutoff")
    return RunConfig(
        group=parse_group(d.get("group", "T1")),
        symbol=d.get("symbol"),
        ladder=parse_ladder(d.get("ladder")),
        r=r,
        criteria=crit,
        output=str(d.get("output", "out")),
        seed=int(d.get("seed", 0)),
        thresholds=th,
        function=d.get("function"),
        cutoff=None if cutoff is None else float(cutoff),
        extra={k: v for k, v in d.items() if k not in _KNOWN},
    )


def load_config(path) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    return config_from_dict(data)
