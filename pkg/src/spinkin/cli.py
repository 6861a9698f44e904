"""Command-line interface.

Exit codes: 0 on success, 2 on invalid input, 3 when a state is too close
to the boundary for the Bures solver.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import rotational_averages as ra
from . import survey_harness as sh
from .bures_geometry import dittmann_bures_sq
from .errors import DegenerateStateError, ValidationError
from .matrix_kernel import commutator
from .spin_algebra import spin_matrices
from .states import collective_generators, is_pure, load_state

EXIT_OK, EXIT_INVALID, EXIT_DEGENERATE = 0, 2, 3


def _out(name: str, value) -> None:
    if isinstance(value, (float, np.floating)):
        value = sh.fmt(float(value))
    print(f"{name} {value}")


def _load(args):
    st = load_state(args.input)
    rho = st.density()
    two_qubit = getattr(args, "two_qubit", False)
    if two_qubit and rho.shape != (4, 4):
        raise ValidationError("--two-qubit needs a 4-dimensional state (spin 3/2 slot)")
    return st, rho, two_qubit


def cmd_variance(args) -> None:
    st, rho, two_qubit = _load(args)
    gens = collective_generators() if two_qubit else spin_matrices(Fraction(rho.shape[0] - 1, 2))
    if args.mixed_backend == "dittmann" and not is_pure(rho):
        if rho.shape != (4, 4):
            raise ValidationError("the dittmann backend needs a 4-dimensional state")
        total = sum(dittmann_bures_sq(rho, -1j * commutator(g, rho)) for g in gens)
    else:
        total = ra.total_variance(rho, gens)
    _out("pure", str(is_pure(rho)).lower())
    _out("total_variance", total)
    _out("avg_speed_sq", total / 3)


def cmd_accel(args) -> None:
    st, rho, _ = _load(args)
    s = Fraction(rho.shape[0] - 1, 2)
    if not is_pure(rho):
        _out("total_acceleration_mixed", ra.total_acceleration_mixed(rho))
        return
    routes = ("exact", "design", "closed") if args.route == "all" else (args.route,)
    for r in routes:
        _out(f"total_acceleration_{r}", ra.total_acceleration(rho, s, r))


def cmd_excess(args) -> None:
    st, rho, _ = _load(args)
    if rho.shape == (3, 3):
        rec = sh.evaluate_state(rho)
        if rec.flag == "degenerate":
            raise DegenerateStateError("Bures solver rejected the state", min_eigenvalue=None)
        _out("total_variance", rec.totvar)
        _out("reduced_total_variance", 3 * rec.v2_red)
        _out("total_speed_excess", rec.excess_F)
        return
    if rho.shape != (4, 4):
        raise ValidationError("speed excess needs a spin-1 or two-qubit state")
    for label, e in zip("xyz", np.eye(3)):
        _out(f"F_{label}", ra.speed_excess(rho, e).excess)
    _out("total_speed_excess", ra.total_speed_excess(rho))


def cmd_lambda(args) -> None:
    s = Fraction(args.spin).limit_denominator(100)
    closed = ra.lambda_coefficients(s, "closed")
    appendix = ra.lambda_coefficients(s, "appendix")
    for i in range(1, 6):
        _out(f"lambda{i}", closed[i])
    _out("max_route_difference", max(abs(a - b) for a, b in zip(closed.values, appendix.values)))


def cmd_design_check(args) -> None:
    worst = 0.0
    for m in ra.monomial_classes(4):
        exact = float(ra.monomial_sphere_average(m))
        got = ra.design_monomial_average(m)
        worst = max(worst, abs(got - exact))
        print(f"x^{m[0]} y^{m[1]} z^{m[2]} {sh.fmt(got)} {sh.fmt(exact)}")
    _out("max_error", worst)


def cmd_survey(args) -> None:
    cfg = sh.SurveyConfig(args.samples, args.seed, args.components, args.metric, args.out)
    result = sh.run_survey(cfg)
    for k, v in result.summary().items():
        _out(k, v)


def cmd_contour(args) -> None:
    path = sh.emit_contour_grid(args.resolution, args.out)
    _out("written", str(path))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spinkin", description="Rotational kinematics of spin states.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("variance", help="total variance and axis-averaged squared speed")
    v.add_argument("--input", required=True)
    v.add_argument("--mixed-backend", choices=("eigen", "dittmann"), default="eigen")
    v.add_argument("--two-qubit", action="store_true", help="treat a 4-dim state as two qubits")
    v.set_defaults(func=cmd_variance)

    a = sub.add_parser("accel", help="total (rotation-averaged) acceleration")
    a.add_argument("--input", required=True)
    a.add_argument("--route", choices=("exact", "design", "closed", "all"), default="closed")
    a.set_defaults(func=cmd_accel)

    e = sub.add_parser("excess", help="speed excess of a spin-1 or two-qubit state")
    e.add_argument("--input", required=True)
    e.set_defaults(func=cmd_excess)

    lam = sub.add_parser("lambda", help="lambda coefficients for spin S")
    lam.add_argument("--spin", required=True)
    lam.set_defaults(func=cmd_lambda)

    d = sub.add_parser("design-check", help="check the six-point (2,2)-design on quartic monomials")
    d.set_defaults(func=cmd_design_check)

    s = sub.add_parser("survey", help="random mixed-state survey")
    s.add_argument("--samples", type=int, default=3000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--components", type=int, default=3)
    s.add_argument("--out", required=True)
    s.add_argument("--metric", choices=("bures", "trace"), default="bures")
    s.set_defaults(func=cmd_survey)

    c = sub.add_parser("contour", help="spin-3/2 total acceleration over star angles")
    c.add_argument("--resolution", type=int, required=True)
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_contour)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except DegenerateStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ValidationError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
