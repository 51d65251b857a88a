"""Command-line front end.

Subcommands: feasibility, spectrum, solve, sequence, verify, pullback.
Exit codes: 0 on success (including a flagged non-converged solve),
2 for bad parameters, 3 for numeric divergence.
"""

import argparse
import sys

import numpy as np

from . import records
from .conformal import pullback_values
from .errors import NumericError, ParameterError, SphereCritError
from .feasibility import check, report_to_dict
from .harmonics import build_basis, make_params
from .operators import eigenvalue
from .oracle import richardson_pair
from .solver import SolverConfig, reverify, solve, solve_sequence

DEFAULTS = {
    "modes": 64,
    "quad": 256,
    "tol": 1e-9,
    "tau": 0.5,
    "max_iter": 20000,
}

ORACLE_MESH_POINTS = 2000
ORACLE_SUP_TOL = 1e-5


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_ansatz(text: str) -> tuple:
    try:
        pairs = []
        for chunk in text.split(","):
            j, amp = chunk.split(":")
            pairs.append((int(j), float(amp)))
        return tuple(pairs)
    except ValueError as exc:
        raise ParameterError(f"bad ansatz {text!r}; expected 'j:amp[,j:amp...]'") from exc


def _add_solve_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--n", type=int, required=True, help="space dimension (>= 3)")
    sub.add_argument("--s", type=float, required=True, help="operator order in (0, n/2)")
    sub.add_argument("--modes", type=int, default=DEFAULTS["modes"],
                     help="number of basis modes (highest index is modes-1)")
    sub.add_argument("--quad", type=int, default=DEFAULTS["quad"])
    sub.add_argument("--sector", choices=("full", "odd"), default="full")
    sub.add_argument("--ansatz", type=str, default=None,
                     help="'j:amp[,j:amp...]'; default 0:1 (full) or 1:1 (odd)")
    sub.add_argument("--tol", type=float, default=DEFAULTS["tol"])
    sub.add_argument("--max-iter", type=int, default=DEFAULTS["max_iter"])
    sub.add_argument("--tau", type=float, default=DEFAULTS["tau"])


def _config_from_args(args) -> SolverConfig:
    if args.ansatz is not None:
        ansatz = _parse_ansatz(args.ansatz)
    else:
        ansatz = ((1, 1.0),) if args.sector == "odd" else ((0, 1.0),)
    if args.modes < 1:
        raise ParameterError("--modes must be >= 1")
    return SolverConfig(
        max_modes=args.modes - 1,
        quad_count=args.quad,
        tol=args.tol,
        max_iter=args.max_iter,
        step=args.tau,
        ansatz=ansatz,
        sector=args.sector,
    )


def cmd_feasibility(args) -> int:
    report = check(args.n, args.s)
    sys.stdout.write(records.dumps(report_to_dict(report)))
    return 0


def cmd_spectrum(args) -> int:
    if args.degrees < 0:
        raise ParameterError("--degrees must be >= 0")
    params = make_params(args.n, args.s)
    print("l lambda")
    for l in range(args.degrees + 1):
        print(f"{l} {_fmt(eigenvalue(params, l))}")
    return 0


def cmd_solve(args) -> int:
    params = make_params(args.n, args.s)
    config = _config_from_args(args)
    basis = build_basis(params, config.max_modes, config.quad_count)
    solution = solve(params, basis, config)
    record = records.record_from_solution(params, config, solution)
    records.write_record(args.out, record)
    print(
        f"converged={solution.converged} energy={_fmt(solution.energy)} "
        f"dirichlet={_fmt(solution.dirichlet)} residual={_fmt(solution.residual_dual)} "
        f"nodal={solution.nodal_count} iterations={solution.iterations} -> {args.out}"
    )
    return 0


def cmd_sequence(args) -> int:
    params = make_params(args.n, args.s)
    config = _config_from_args(args)
    basis = build_basis(params, config.max_modes, config.quad_count)
    solutions = solve_sequence(params, basis, config, args.count)
    print("k dirichlet energy nodal_count")
    for i, sol in enumerate(solutions):
        records.write_record(
            f"{args.out}{i:02d}.json",
            records.record_from_solution(params, config, sol),
        )
        print(f"{i} {_fmt(sol.dirichlet)} {_fmt(sol.energy)} {sol.nodal_count}")
    if len(solutions) < args.count:
        print(
            f"warning: requested {args.count} solutions, found {len(solutions)}",
            file=sys.stderr,
        )
    return 0


def cmd_verify(args) -> int:
    record = records.read_record(args.solution)
    params, profile = records.profile_from_record(record)
    dual = reverify(params, profile, record["quad_count"])
    allowed = 10.0 * record["tol"]
    residual_ok = dual <= allowed
    print(f"residual at doubled resolution: {_fmt(dual)} (allowed {_fmt(allowed)}) "
          f"-> {'ok' if residual_ok else 'exceeded'}")

    oracle_ok = True
    if params.s == 1.0 and record["converged"]:
        basis = build_basis(params, record["max_modes"], record["quad_count"])

        def spectral_on(mesh):
            return basis.values_at(mesh) @ profile.coefficients

        mesh, extrapolated, coarse, fine = richardson_pair(
            params, spectral_on, ORACLE_MESH_POINTS,
            antisymmetric=profile.sector == "odd",
        )
        sup_diff = float(np.max(np.abs(extrapolated - spectral_on(mesh))))
        oracle_converged = coarse.converged and fine.converged
        oracle_ok = (oracle_converged and not coarse.trivial
                     and sup_diff <= ORACLE_SUP_TOL)
        print(f"order-1 collocation oracle: converged={oracle_converged} "
              f"sup-difference={_fmt(sup_diff)} (allowed {_fmt(ORACLE_SUP_TOL)}) "
              f"-> {'ok' if oracle_ok else 'exceeded'}")

    print("PASS" if residual_ok and oracle_ok else "FAIL")
    return 0


def cmd_pullback(args) -> int:
    record = records.read_record(args.solution)
    params, profile = records.profile_from_record(record)
    basis = build_basis(params, record["max_modes"], record["quad_count"])
    if args.grid < 2 or args.r1max <= 0 or args.r2max <= 0:
        raise ParameterError("grid must be >= 2 and the radii positive")
    r1 = np.linspace(0.0, args.r1max, args.grid)
    r2 = np.linspace(0.0, args.r2max, args.grid)
    values = pullback_values(profile, basis, r1[:, None], r2[None, :])
    rows = (
        (r1[i], r2[j], values[i, j])
        for i in range(args.grid)
        for j in range(args.grid)
    )
    records.write_csv(args.out, "r1,r2,v", rows)
    print(f"wrote {args.grid * args.grid} samples -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spherecrit",
        description="Critical points of the conformally invariant fractional "
                    "equation, computed on the sphere in invariant sectors.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("feasibility", help="evaluate the parameter hypotheses")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--s", type=float, required=True)
    sub.set_defaults(func=cmd_feasibility)

    sub = subs.add_parser("spectrum", help="operator eigenvalues by degree")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--s", type=float, required=True)
    sub.add_argument("--degrees", type=int, required=True,
                     help="largest degree l to print (inclusive)")
    sub.set_defaults(func=cmd_spectrum)

    sub = subs.add_parser("solve", help="compute one critical point")
    _add_solve_flags(sub)
    sub.add_argument("--out", type=str, required=True, help="output record path")
    sub.set_defaults(func=cmd_solve)

    sub = subs.add_parser("sequence", help="ladder of distinct critical points")
    _add_solve_flags(sub)
    sub.add_argument("--count", type=int, required=True)
    sub.add_argument("--out", type=str, required=True,
                     help="output prefix; records go to PREFIX<k>.json")
    sub.set_defaults(func=cmd_sequence)

    sub = subs.add_parser("verify", help="re-verify a stored solution")
    sub.add_argument("--solution", type=str, required=True)
    sub.set_defaults(func=cmd_verify)

    sub = subs.add_parser("pullback", help="sample the flat-side pullback on a grid")
    sub.add_argument("--solution", type=str, required=True)
    sub.add_argument("--r1max", type=float, default=3.0)
    sub.add_argument("--r2max", type=float, default=3.0)
    sub.add_argument("--grid", type=int, default=33)
    sub.add_argument("--out", type=str, required=True, help="output CSV path")
    sub.set_defaults(func=cmd_pullback)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    except (OSError, SphereCritError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
