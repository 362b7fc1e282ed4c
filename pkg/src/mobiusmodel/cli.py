"""Command-line front end: ``classify``, ``check`` and ``construct``.

Exit codes: 0 ok, 1 theorem/oracle disagreement, 2 input error,
3 invariant or numeric failure.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Any

import click

from .blaschke import FiniteBlaschkeProduct
from .classifier import (
    classify_D,
    classify_L,
    construct_example,
    contains,
    is_D_trivial,
    is_L_trivial,
    rotation_divisor,
)
from .errors import ModelSpaceError
from .numerics import ToleranceConfig, profile_from_env
from .oracle import invariance_residual
from .problem import Problem, ProblemFormatError, dump_problem, parse_problem, theta_to_json
from .report import describe_family, nonconstant_trivial, render
from .symbols import Constant, is_disc_self_map

EXIT_DISAGREE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _base_config() -> ToleranceConfig:
    try:
        return profile_from_env()
    except ModelSpaceError as exc:
        _fail(EXIT_INPUT, str(exc))


def _load(path: str, eq_tol, residual_tol, max_order) -> Problem:
    """Profile < file tolerances < command-line flags."""
    base = _base_config()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        _fail(EXIT_INPUT, f"cannot read {path}: {exc.strerror}")
    flags = {"eq_tol": eq_tol, "residual_tol": residual_tol, "max_order": max_order}
    try:
        return parse_problem(text, base, flags)
    except ProblemFormatError as exc:
        _fail(EXIT_INPUT, f"{path}: {exc}")
    except ModelSpaceError as exc:
        _fail(EXIT_INTERNAL, f"{path}: {exc}")


def tolerance_options(f):
    f = click.option("--max-order", type=int, default=None, help="Bound for order searches.")(f)
    f = click.option("--residual-tol", type=float, default=None, help="Span-membership residual threshold.")(f)
    f = click.option("--eq-tol", type=float, default=None, help="Complex equality tolerance.")(f)
    return f


def _theta_rows(theta: FiniteBlaschkeProduct) -> list[tuple[str, Any]]:
    return [
        ("degree", theta.degree),
        ("distinct_zeros", theta.distinct_count),
        ("vanishes_at_origin", theta.vanishes_at_origin),
        ("zeros", theta_to_json(theta)),
    ]


def classify_rows(theta: FiniteBlaschkeProduct, cfg: ToleranceConfig) -> list[tuple[str, Any]]:
    D, L = classify_D(theta, cfg), classify_L(theta, cfg)
    rows = [("command", "classify")] + _theta_rows(theta)
    rows += describe_family("D", D) + describe_family("L", L)
    if not theta.vanishes_at_origin:
        rows.append(("rotation_divisor", rotation_divisor(theta, cfg)))
        rows.append(("trivial_D", is_D_trivial(theta, cfg)))
    else:
        rows.append(("trivial_D", nonconstant_trivial(D)))
    rows.append(("trivial_L", is_L_trivial(theta, cfg)))
    return rows


def check_rows(theta: FiniteBlaschkeProduct, phi, cfg: ToleranceConfig) -> tuple[list[tuple[str, Any]], bool]:
    theorem_L = contains(classify_L(theta, cfg), phi, cfg)
    theorem_D = contains(classify_D(theta, cfg), phi, cfg)
    oracle_L, residual = invariance_residual(theta, phi, cfg)
    in_disc = abs(phi.value) < 1 if isinstance(phi, Constant) else is_disc_self_map(phi, cfg)
    oracle_D = oracle_L and in_disc
    agree = theorem_L == oracle_L and theorem_D == oracle_D
    rows = [("command", "check")] + _theta_rows(theta)
    rows += [
        ("disc_self_map", in_disc),
        ("theorem_verdict", theorem_L),
        ("oracle_verdict", oracle_L),
        ("theorem_verdict_D", theorem_D),
        ("oracle_verdict_D", oracle_D),
        ("oracle_residual_max", residual),
        ("agree", agree),
    ]
    return rows, agree


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="mobiusmodel")
def main():
    """Classify composition-operator symbols preserving finite-Blaschke model spaces."""


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@tolerance_options
def classify(path, eq_tol, residual_tol, max_order):
    """Describe D(Q_theta) and L(Q_theta) for the product in PATH."""
    problem = _load(path, eq_tol, residual_tol, max_order)
    try:
        rows = classify_rows(problem.theta, problem.cfg)
    except ModelSpaceError as exc:
        _fail(EXIT_INTERNAL, str(exc))
    click.echo(render(rows), nl=False)


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@tolerance_options
def check(path, eq_tol, residual_tol, max_order):
    """Compare the classification verdict for the symbol in PATH with the oracle."""
    problem = _load(path, eq_tol, residual_tol, max_order)
    if problem.symbol is None:
        _fail(EXIT_INPUT, f"{path}: check needs a symbol")
    try:
        rows, agree = check_rows(problem.theta, problem.symbol, problem.cfg)
    except ModelSpaceError as exc:
        _fail(EXIT_INTERNAL, str(exc))
    click.echo(render(rows), nl=False)
    if not agree:
        sys.exit(EXIT_DISAGREE)


@main.command()
@click.argument("n", type=int)
@click.argument("d", type=int)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write here instead of stdout.")
def construct(n, d, out):
    """Write a problem file whose D(Q_theta) is generated by exp(2 pi i/D) z, with N zeros."""
    if n < 1 or d < 1 or n % d:
        _fail(EXIT_INPUT, f"d = {d} must be a positive divisor of n = {n}")
    try:
        theta = construct_example(n, d, _base_config())
    except ModelSpaceError as exc:
        _fail(EXIT_INTERNAL, str(exc))
    text = dump_problem(theta)
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)


if __name__ == "__main__":
    main()
