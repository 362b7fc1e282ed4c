"""Problem files: the JSON input format of the command-line tool.

A problem file is an object with

* ``blaschke``: a list of ``{"re": x, "im": y, "mult": m}`` zeros;
* ``symbol`` (optional): ``{"kind": k, "coefficients": [[re, im], ...]}`` with
  ``k`` one of constant (1 coefficient), rotation (1), affine (2: a, b) or
  moebius (4: a, b, c, d);
* ``tolerances`` (optional): overrides for ToleranceConfig fields.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .blaschke import FiniteBlaschkeProduct, make
from .numerics import DEFAULT, ToleranceConfig
from .symbols import Constant, Identity, SelfMap, affine, constant, matrix, moebius, rotation


class ProblemFormatError(ValueError):
    """The input is not a well-formed problem file."""


SYMBOL_ARITY = {"constant": 1, "rotation": 1, "affine": 2, "moebius": 4}
TOLERANCE_FIELDS = ("eq_tol", "residual_tol", "cond_max", "max_order")


@dataclass(frozen=True)
class Problem:
    theta: FiniteBlaschkeProduct
    symbol: SelfMap | None
    cfg: ToleranceConfig


def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [z.real + 0.0, z.imag + 0.0]


def _complex_from_json(value: Any) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        raise ProblemFormatError(f"expected [re, im], got {value!r}")
    return complex(value[0], value[1])


def symbol_to_json(phi: SelfMap) -> dict:
    if isinstance(phi, Constant):
        return {"kind": "constant", "coefficients": [complex_to_json(phi.value)]}
    if isinstance(phi, Identity):
        return {"kind": "rotation", "coefficients": [[1.0, 0.0]]}
    a, b, c, d = matrix(phi)
    if c == 0 and b == 0 and d == 1:
        return {"kind": "rotation", "coefficients": [complex_to_json(a)]}
    if c == 0:
        return {"kind": "affine", "coefficients": [complex_to_json(a / d), complex_to_json(b / d)]}
    return {"kind": "moebius", "coefficients": [complex_to_json(x) for x in (a, b, c, d)]}


def symbol_from_json(data: Any, cfg: ToleranceConfig = DEFAULT) -> SelfMap:
    """Build a canonical symbol; module invariants are enforced by the factories."""
    if not isinstance(data, dict):
        raise ProblemFormatError("symbol must be an object")
    kind = data.get("kind")
    if kind not in SYMBOL_ARITY:
        raise ProblemFormatError(f"unknown symbol kind {kind!r}")
    coeffs = data.get("coefficients")
    if not isinstance(coeffs, list) or len(coeffs) != SYMBOL_ARITY[kind]:
        raise ProblemFormatError(f"{kind} symbol needs {SYMBOL_ARITY[kind]} coefficients")
    values = [_complex_from_json(c) for c in coeffs]
    if kind == "constant":
        return constant(values[0])
    if kind == "rotation":
        return rotation(values[0], cfg)
    if kind == "affine":
        return affine(*values, cfg)
    return moebius(*values, cfg)


def theta_to_json(theta: FiniteBlaschkeProduct) -> list[dict]:
    return [
        {"re": z.location.real + 0.0, "im": z.location.imag + 0.0, "mult": z.multiplicity}
        for z in theta.zeros
    ]


def _zero_pair(entry: Any) -> tuple[complex, int]:
    if not isinstance(entry, dict) or set(entry) - {"re", "im", "mult"} or "re" not in entry:
        raise ProblemFormatError(f"malformed zero {entry!r}")
    re, im, mult = entry["re"], entry.get("im", 0.0), entry.get("mult", 1)
    if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in (re, im)):
        raise ProblemFormatError(f"zero coordinates must be numbers: {entry!r}")
    if not isinstance(mult, int) or isinstance(mult, bool):
        raise ProblemFormatError(f"multiplicity must be an integer: {entry!r}")
    return complex(re, im), mult


def tolerances_from_json(data: Any, base: ToleranceConfig) -> ToleranceConfig:
    if not isinstance(data, dict) or set(data) - set(TOLERANCE_FIELDS):
        raise ProblemFormatError(f"tolerances must be an object with keys from {TOLERANCE_FIELDS}")
    try:
        return base.with_overrides(**data)
    except (TypeError, ValueError) as exc:
        raise ProblemFormatError(str(exc)) from exc


def parse_problem(text: str, base: ToleranceConfig = DEFAULT, overrides: dict | None = None) -> Problem:
    """Parse problem-file text.

    Tolerances are layered: ``base``, then the file's ``tolerances``, then
    the non-None entries of ``overrides``.

    Malformed input raises ProblemFormatError; well-formed input that violates
    a mathematical invariant (a zero outside the disc, a singular Moebius
    matrix) raises DomainError from the constructors.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or set(data) - {"blaschke", "symbol", "tolerances"}:
        raise ProblemFormatError("problem file must be an object with keys blaschke, symbol, tolerances")
    zeros = data.get("blaschke")
    if not isinstance(zeros, list):
        raise ProblemFormatError("blaschke must be a list of zeros")
    cfg = tolerances_from_json(data["tolerances"], base) if "tolerances" in data else base
    if overrides:
        cfg = tolerances_from_json({k: v for k, v in overrides.items() if v is not None}, cfg)
    theta = make([_zero_pair(e) for e in zeros], cfg)
    symbol = symbol_from_json(data["symbol"], cfg) if data.get("symbol") is not None else None
    return Problem(theta, symbol, cfg)


def dump_problem(theta: FiniteBlaschkeProduct, symbol: SelfMap | None = None) -> str:
    data: dict[str, Any] = {"blaschke": theta_to_json(theta)}
    if symbol is not None:
        data["symbol"] = symbol_to_json(symbol)
    return json.dumps(data, indent=2) + "\n"
