"""Structured key/value reports.

Each line is ``key: value`` where value is a JSON scalar, array or object
(written compactly on one line), so every report re-parses with
``parse_report``.  Keys are unique; nested families use dotted keys.
"""

from __future__ import annotations

import json
from typing import Any, Iterable

from .classifier import (
    AffineLine,
    AllRational,
    AllSelfMaps,
    ConstantsPart,
    FiniteSet,
    InvarianceFamily,
    MoebiusFixedPoint,
    MoebiusMultMatch,
)
from .problem import complex_to_json, symbol_to_json
from .symbols import Identity

SCHEMA_VERSION = 1


def _constants(part: ConstantsPart) -> dict:
    out: dict[str, Any] = {"kind": part.kind}
    if part.kind == "plane_minus_points":
        out["excluded"] = [complex_to_json(p) for p in part.excluded]
    return out


def describe_family(prefix: str, family: InvarianceFamily) -> list[tuple[str, Any]]:
    """Key/value description of an InvarianceFamily."""
    if isinstance(family, AllSelfMaps):
        return [(f"{prefix}.kind", "all_self_maps")]
    if isinstance(family, AllRational):
        return [(f"{prefix}.kind", "all_rational")]
    if isinstance(family, FiniteSet):
        rows = [
            (f"{prefix}.kind", "finite_set"),
            (f"{prefix}.order", len(family.elements)),
            (f"{prefix}.elements", [symbol_to_json(e) for e in family.elements]),
        ]
        if family.cyclic_generator is not None:
            rows.append((f"{prefix}.cyclic_generator", symbol_to_json(family.cyclic_generator)))
        rows.append((f"{prefix}.constants", _constants(family.constants)))
        return rows
    if isinstance(family, AffineLine):
        return [
            (f"{prefix}.kind", "affine_line"),
            (f"{prefix}.lambda", complex_to_json(family.lam)),
            (f"{prefix}.constants", _constants(family.constants)),
        ]
    if isinstance(family, MoebiusFixedPoint):
        return [
            (f"{prefix}.kind", "moebius_fixed_point"),
            (f"{prefix}.point", complex_to_json(family.point)),
            (f"{prefix}.restrict_to_disc", family.restrict_to_disc),
            (f"{prefix}.constants", _constants(family.constants)),
        ]
    if isinstance(family, MoebiusMultMatch):
        rows = [
            (f"{prefix}.kind", "moebius_mult_match"),
            (f"{prefix}.restrict_to_disc", family.restrict_to_disc),
            (f"{prefix}.pole_floor", family.pole_floor),
            (f"{prefix}.constants", _constants(family.constants)),
        ]
        if family.enumerated is not None:
            rows += [
                (f"{prefix}.enumeration_complete", family.enumeration_complete),
                (f"{prefix}.enumerated_count", len(family.enumerated)),
                (f"{prefix}.enumerated", [symbol_to_json(e) for e in family.enumerated]),
            ]
        return rows
    raise TypeError(f"unknown family {family!r}")


def nonconstant_trivial(family: InvarianceFamily) -> bool | None:
    """Whether the nonconstant part of a family is {z}; None when undecided."""
    if isinstance(family, FiniteSet):
        return all(isinstance(e, Identity) for e in family.elements)
    if isinstance(family, MoebiusMultMatch) and family.enumerated is not None:
        if len(family.enumerated) > 1:
            return False
        return True if family.enumeration_complete else None
    return False


def render(rows: Iterable[tuple[str, Any]]) -> str:
    lines = [f"schema_version: {SCHEMA_VERSION}"]
    lines += [f"{key}: {json.dumps(value, separators=(',', ':'))}" for key, value in rows]
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict[str, Any]:
    """Inverse of ``render``: a dict of decoded values keyed by report key."""
    out: dict[str, Any] = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        key, sep, value = line.partition(": ")
        if not sep or key in out:
            raise ValueError(f"malformed report line {line!r}")
        out[key] = json.loads(value)
    return out
