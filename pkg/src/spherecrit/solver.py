"""Critical-point computation in invariant (and parity-restricted) sectors.

Two phases: a Nehari-projected preconditioned fixed-point iteration (runs on
the compiled backend when available) that is globally stable around sector
ground states, and a Galerkin-Newton refinement with step-halving that
converges quadratically near nondegenerate critical points and is also the
workhorse for excited states, started straight from a rescaled ansatz.
"""

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import backend
from .errors import NumericError, ParameterError, RefinementError
from .harmonics import InvariantBasis, ProblemParams, build_basis, synthesize
from .operators import (
    SpectralProfile,
    degree_multipliers,
    dirichlet_form,
    dual_norm,
    sector_mask,
)
from .variational import energy, nehari_scale, nodal_count, residual

__all__ = [
    "SolverConfig",
    "Solution",
    "iterate",
    "newton_refine",
    "solve",
    "solve_sequence",
    "reverify",
]

log = logging.getLogger(__name__)

DEDUP_RELATIVE_DISTANCE = 1e-3
NEWTON_MAX_STEPS = 50
NEWTON_COND_LIMIT = 1e12


@dataclass(frozen=True)
class SolverConfig:
    """Discretization, iteration and ansatz settings for one solve."""

    max_modes: int = 64
    quad_count: int = 256
    tol: float = 1e-9
    max_iter: int = 20000
    step: float = 0.5
    newton_switch: float = 1e-3
    ansatz: tuple = ((0, 1.0),)
    sector: str = "full"

    def __post_init__(self):
        if self.quad_count < 4 * (self.max_modes + 1):
            raise ParameterError(
                f"quad_count={self.quad_count} must be at least "
                f"4*(max_modes+1)={4 * (self.max_modes + 1)}"
            )
        if not self.tol > 0:
            raise ParameterError("tol must be positive")
        if not 0.0 < self.step <= 1.0:
            raise ParameterError("step must lie in (0, 1]")
        if not self.newton_switch > 0:
            raise ParameterError("newton_switch must be positive")
        object.__setattr__(self, "ansatz", tuple((int(j), float(a)) for j, a in self.ansatz))


@dataclass
class Solution:
    """A converged (or best-effort) critical point with diagnostics."""

    profile: SpectralProfile
    energy: float
    dirichlet: float
    residual_dual: float
    nodal_count: int
    iterations: int
    converged: bool


def _check_basis(basis: InvariantBasis, config: SolverConfig) -> None:
    if basis.max_index != config.max_modes or basis.grid.count != config.quad_count:
        raise ParameterError(
            "basis resolution does not match the config "
            f"(basis {basis.max_index}/{basis.grid.count}, "
            f"config {config.max_modes}/{config.quad_count})"
        )


def _ansatz_vector(params: ProblemParams, config: SolverConfig) -> np.ndarray:
    if config.sector != "full" and params.k != params.m:
        raise ParameterError(
            "parity sectors need equal symmetry blocks (odd dimension n); "
            f"got k={params.k}, m={params.m}"
        )
    c = np.zeros(config.max_modes + 1)
    for j, amp in config.ansatz:
        if not 0 <= j <= config.max_modes:
            raise ParameterError(f"ansatz index {j} outside 0..{config.max_modes}")
        c[j] += amp
    mask = sector_mask(c.size, config.sector)
    if np.any(c[~mask] != 0.0):
        raise ParameterError(f"ansatz has components outside the {config.sector!r} sector")
    if not np.any(c != 0.0):
        raise ParameterError("ansatz is zero in the chosen sector")
    return c


def _prescaled_start(params, basis, config) -> SpectralProfile:
    w = SpectralProfile(params=params, sector=config.sector,
                        coefficients=_ansatz_vector(params, config))
    scale = nehari_scale(params, basis, w)
    if not math.isfinite(scale) or scale <= 0.0:
        raise NumericError(f"Nehari prescaling of the ansatz failed (scale={scale})")
    w.coefficients *= scale
    return w


def _solution_from_profile(params, basis, w, iterations, dual, tol) -> Solution:
    return Solution(
        profile=w,
        energy=energy(params, basis, w),
        dirichlet=dirichlet_form(params, w),
        residual_dual=dual,
        nodal_count=nodal_count(basis, w),
        iterations=iterations,
        converged=bool(dual <= tol),
    )


def _run_fixed_point(params, basis, config, stop_tol):
    start = _prescaled_start(params, basis, config)
    lam = degree_multipliers(params, config.max_modes)
    mask = sector_mask(start.coefficients.size, config.sector)
    c, dual, iterations, status = backend.nehari_fixed_point(
        basis.table, basis.wq, lam, start.coefficients, mask,
        params.q, config.step, stop_tol, config.max_iter,
    )
    if status == backend.FP_DIVERGED:
        raise NumericError("fixed-point iteration diverged (non-finite energy or norms)")
    w = SpectralProfile(params=params, sector=config.sector, coefficients=c)
    return w, dual, iterations


def iterate(params: ProblemParams, basis: InvariantBasis, config: SolverConfig) -> Solution:
    """Nehari-projected fixed-point phase; returns the best iterate found.

    Stops at config.tol or config.max_iter; non-convergence is reported in
    the flag (exceptions are reserved for divergence to non-finite values).
    """
    _check_basis(basis, config)
    w, dual, iterations = _run_fixed_point(params, basis, config, config.tol)
    return _solution_from_profile(params, basis, w, iterations, dual, config.tol)


def newton_refine(
    params: ProblemParams,
    basis: InvariantBasis,
    w: SpectralProfile,
    tol: float = 1e-9,
    max_steps: int = NEWTON_MAX_STEPS,
) -> Solution:
    """Galerkin-Newton iteration on the sector subspace.

    Linearizes A_s w - |w|^(q-2) w around the current iterate; the update
    solves  (Lambda - (q-1) <|w|^(q-2) Y_i, Y_j>) delta = -r.  A step-halving
    line search keeps the dual residual monotone.  Raises RefinementError on
    ill-conditioned systems so the caller can keep its pre-Newton iterate.
    """
    q = params.q
    lam = degree_multipliers(params, w.max_index)
    idx = np.flatnonzero(sector_mask(w.coefficients.size, w.sector))
    cols = basis.table[:, idx]

    current = SpectralProfile(params=params, sector=w.sector,
                              coefficients=w.coefficients.copy())
    r = residual(params, basis, current)
    dual = dual_norm(params, r)
    steps = 0
    while dual > tol and steps < max_steps:
        v = synthesize(basis, current.coefficients)
        density = basis.wq * (q - 1.0) * np.abs(v) ** (q - 2.0)
        m = np.diag(lam[idx]) - cols.T @ (density[:, None] * cols)
        cond = np.linalg.cond(m)
        if not np.isfinite(cond) or cond > NEWTON_COND_LIMIT:
            raise RefinementError(
                f"Newton system ill-conditioned (estimate {cond:.3e})"
            )
        delta = np.linalg.solve(m, -r.coefficients[idx])

        sigma = 1.0
        accepted = False
        while sigma >= 2.0**-30:
            trial = current.coefficients.copy()
            trial[idx] += sigma * delta
            w_try = SpectralProfile(params=params, sector=w.sector, coefficients=trial)
            r_try = residual(params, basis, w_try)
            dual_try = dual_norm(params, r_try)
            if np.isfinite(dual_try) and dual_try < dual:
                current, r, dual = w_try, r_try, dual_try
                accepted = True
                break
            sigma *= 0.5
        steps += 1
        if not accepted:
            break
    return _solution_from_profile(params, basis, current, steps, dual, tol)


def solve(params: ProblemParams, basis: InvariantBasis, config: SolverConfig) -> Solution:
    """Full pipeline: fixed-point phase down to newton_switch, then Newton."""
    _check_basis(basis, config)
    stop = max(config.tol, config.newton_switch)
    w, dual, iterations = _run_fixed_point(params, basis, config, stop)
    if config.tol < dual <= config.newton_switch:
        try:
            refined = newton_refine(params, basis, w, tol=config.tol)
        except RefinementError as exc:
            log.warning("Newton refinement abandoned: %s", exc)
        else:
            if refined.residual_dual <= dual:
                refined.iterations += iterations
                return refined
    return _solution_from_profile(params, basis, w, iterations, dual, config.tol)


def reverify(params: ProblemParams, w: SpectralProfile, quad_count: int,
             extra_modes: int = 16, quad_factor: int = 2) -> float:
    """Dual residual of w recomputed at raised resolution (aliasing check)."""
    big_index = w.max_index + extra_modes
    big_quad = max(quad_factor * quad_count, 2 * (big_index + 1))
    big = build_basis(params, big_index, big_quad)
    padded = np.zeros(big_index + 1)
    padded[: w.coefficients.size] = w.coefficients
    w_big = SpectralProfile(params=params, sector=w.sector, coefficients=padded)
    return dual_norm(params, residual(params, big, w_big))


def _canonical_coefficients(c: np.ndarray) -> np.ndarray:
    """Fix the sign ambiguity w -> -w so duplicates compare equal."""
    lead = np.argmax(np.abs(c))
    return -c if c[lead] < 0 else c.copy()


def _is_duplicate(c, accepted) -> bool:
    for other in accepted:
        scale = max(np.linalg.norm(c), np.linalg.norm(other))
        if scale == 0.0 or np.linalg.norm(c - other) < DEDUP_RELATIVE_DISTANCE * scale:
            return True
    return False


def _ansatz_ladder(params: ProblemParams, config: SolverConfig, entries: int):
    """Ground entry plus single-mode excited ansaetze with growing node count.

    With equal blocks the parity sector makes sign changes structural (odd
    dominant modes 1, 3, 5, ...); otherwise full-sector nodal ansaetze are
    used best-effort and validated post hoc.
    """
    ladder = [("full", ((0, 1.0),), False)]
    if params.k == params.m:
        js = range(1, 2 * entries + 2, 2)
        sector = "odd"
    else:
        js = range(1, entries + 2)
        sector = "full"
    for rank, j in enumerate(js):
        if j > config.max_modes:
            break
        # lowest mode of its sector relaxes via the fixed point; higher ones
        # go straight to Newton (the gradient flow would slide off them)
        ladder.append((sector, ((j, 1.0),), rank > 0))
    return ladder


def solve_sequence(
    params: ProblemParams,
    basis: InvariantBasis,
    config: SolverConfig,
    count: int,
) -> list[Solution]:
    """Distinct converged critical points sorted by increasing Dirichlet form.

    Runs the ansatz ladder, deduplicates (relative coefficient distance
    below 1e-3), drops solutions that fail re-verification at doubled
    resolution, and returns at most ``count`` entries with strictly
    increasing Dirichlet values.  Returns fewer (with a warning) when the
    ladder does not deliver.
    """
    if count < 1:
        raise ParameterError(f"count must be >= 1, got {count}")
    _check_basis(basis, config)

    accepted: list[Solution] = []
    seen: list[np.ndarray] = []
    for sector, ansatz, newton_direct in _ansatz_ladder(params, config, count):
        if len(accepted) >= count + 2:
            break
        entry = replace(
            config,
            sector=sector,
            ansatz=ansatz,
            newton_switch=math.inf if newton_direct else config.newton_switch,
        )
        try:
            sol = solve(params, basis, entry)
        except (NumericError, RefinementError) as exc:
            log.warning("ladder entry %s/%s failed: %s", sector, ansatz, exc)
            continue
        if not sol.converged:
            log.info("ladder entry %s/%s did not converge (dual=%.3e)",
                     sector, ansatz, sol.residual_dual)
            continue
        canon = _canonical_coefficients(sol.profile.coefficients)
        if _is_duplicate(canon, seen):
            continue
        if reverify(params, sol.profile, config.quad_count) > 10.0 * config.tol:
            log.warning("ladder entry %s/%s failed doubled-resolution check", sector, ansatz)
            continue
        seen.append(canon)
        accepted.append(sol)

    accepted.sort(key=lambda s: s.dirichlet)
    sequence: list[Solution] = []
    for sol in accepted:
        if sequence and sol.dirichlet <= sequence[-1].dirichlet * (1.0 + 1e-10):
            continue
        sequence.append(sol)
        if len(sequence) == count:
            break
    if len(sequence) < count:
        log.warning("requested %d solutions, ladder produced %d", count, len(sequence))
    return sequence
