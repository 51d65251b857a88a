"""Solution persistence: self-describing JSON records and CSV export.

Records embed every parameter needed to reproduce a solve.  Numbers are
written with 17 significant digits, which round-trips IEEE doubles exactly,
so write -> read -> write is byte-stable.
"""

import json
import math

import numpy as np

from .errors import ParameterError
from .harmonics import ProblemParams, make_params
from .operators import SpectralProfile, make_profile
from .solver import Solution, SolverConfig

__all__ = [
    "FORMAT_VERSION",
    "record_from_solution",
    "profile_from_record",
    "config_from_record",
    "dumps",
    "loads",
    "write_record",
    "read_record",
    "write_csv",
]

FORMAT_VERSION = 1

_FIELDS = (
    "format_version", "n", "s", "q", "k", "m", "sector", "max_modes",
    "quad_count", "tol", "coefficients", "energy", "dirichlet",
    "residual_dual", "nodal_count", "iterations", "converged",
)


def _format_number(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        raise ParameterError(f"records only hold finite numbers, got {x!r}")
    return format(x, ".17g")


def _encode(value) -> str:
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ",".join(_encode(v) for v in value) + "]"
    if isinstance(value, dict):
        items = (f"{json.dumps(k)}:{_encode(v)}" for k, v in value.items())
        return "{" + ",".join(items) + "}"
    return _format_number(value)


def dumps(record: dict) -> str:
    """Deterministic single-line JSON with 17-significant-digit numbers."""
    return _encode(record) + "\n"


def loads(text: str) -> dict:
    record = json.loads(text)
    missing = [f for f in _FIELDS if f not in record]
    if missing:
        raise ParameterError(f"record is missing fields: {missing}")
    return record


def record_from_solution(params: ProblemParams, config: SolverConfig,
                         solution: Solution) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "n": params.n,
        "s": params.s,
        "q": params.q,
        "k": params.k,
        "m": params.m,
        "sector": solution.profile.sector,
        "max_modes": config.max_modes,
        "quad_count": config.quad_count,
        "tol": config.tol,
        "coefficients": [float(c) for c in solution.profile.coefficients],
        "energy": solution.energy,
        "dirichlet": solution.dirichlet,
        "residual_dual": solution.residual_dual,
        "nodal_count": solution.nodal_count,
        "iterations": solution.iterations,
        "converged": solution.converged,
    }


def profile_from_record(record: dict) -> tuple[ProblemParams, SpectralProfile]:
    params = make_params(record["n"], record["s"])
    profile = make_profile(params, record["coefficients"], record["sector"])
    return params, profile


def config_from_record(record: dict) -> SolverConfig:
    return SolverConfig(
        max_modes=record["max_modes"],
        quad_count=record["quad_count"],
        tol=record["tol"],
        sector=record["sector"],
    )


def write_record(path, record: dict) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps(record))


def read_record(path) -> dict:
    with open(path, encoding="ascii") as fh:
        return loads(fh.read())


def write_csv(path, header: str, rows) -> None:
    """CSV with 17-significant-digit decimals (same convention as records)."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_format_number(float(v)) for v in row) + "\n")
