"""Arithmetic checker for the hypotheses behind the multiplicity result.

Evaluates the three parameter clauses of the existence statement and the
compactness inequality q < 2(n-d)/(n-d-2m) under the two block-size
conventions for the symmetry group O(k) x O(m) acting on R^(n+1):

* blocks summing to n ("literal"): one coordinate is fixed, the minimal
  orbit touches the poles and the stated orbit dimension is floor(n/2);
* blocks summing to n+1 ("adjusted", the convention used by the solver):
  orbits are pole-free and the minimal orbit dimension is min(k, m) - 1.

For even n the two conventions disagree about the compactness inequality;
the report carries both verdicts plus a ``discrepancy`` flag instead of
silently adjudicating.
"""

import math
from dataclasses import asdict, dataclass

from .errors import ParameterError

__all__ = [
    "FeasibilityReport",
    "regularity_integer",
    "compactness_bound",
    "check",
    "report_to_dict",
]


@dataclass(frozen=True)
class FeasibilityReport:
    n: int
    s: float
    q: float  # +inf when s >= n/2 (supercritical order, no finite exponent)
    clause_a: bool  # 2 <= s < n/2
    clause_b: bool  # 1 <= s < 2n/(n+1)
    clause_c: bool  # n even and 1 <= s < n/2
    covered: bool
    d_literal: int
    d_adjusted: int
    m_reg: int
    rhs_literal: float
    rhs_adjusted: float
    ineq_literal: bool
    ineq_adjusted: bool
    discrepancy: bool


def regularity_integer(s: float) -> int:
    """Integer regularity order backing the embedding: floor(s), except that
    an integer s counts as itself."""
    if not s > 0:
        raise ParameterError(f"regularity_integer requires s > 0, got {s}")
    return int(s) if float(s).is_integer() else math.floor(s)


def compactness_bound(n: int, d: int, m_reg: int) -> float:
    """2(n-d)/(n-d-2m) when positive-denominator, else +inf (every finite
    exponent embeds compactly)."""
    if not 0 <= d < n:
        raise ParameterError(f"orbit dimension must satisfy 0 <= d < n, got d={d}, n={n}")
    denom = n - d - 2 * m_reg
    if denom <= 0:
        return math.inf
    return 2.0 * (n - d) / denom


def check(n: int, s: float) -> FeasibilityReport:
    """Evaluate every clause and both compactness conventions at (n, s).

    Accepts any s > 0 so that parameter grids crossing s = n/2 can be
    tabulated; points with s >= n/2 report q = +inf and covered = False.
    """
    if int(n) != n or n < 3:
        raise ParameterError(f"dimension n must be an integer >= 3, got {n}")
    n = int(n)
    s = float(s)
    if not s > 0:
        raise ParameterError(f"order s must be positive, got {s}")

    q = 2.0 * n / (n - 2.0 * s) if s < n / 2.0 else math.inf
    clause_a = 2.0 <= s < n / 2.0
    clause_b = 1.0 <= s < 2.0 * n / (n + 1.0)
    clause_c = n % 2 == 0 and 1.0 <= s < n / 2.0

    k = (n + 1) // 2
    m = n + 1 - k
    d_literal = n // 2
    d_adjusted = min(k, m) - 1
    m_reg = regularity_integer(s)
    rhs_literal = compactness_bound(n, d_literal, m_reg)
    rhs_adjusted = compactness_bound(n, d_adjusted, m_reg)
    ineq_literal = q < rhs_literal
    ineq_adjusted = q < rhs_adjusted

    return FeasibilityReport(
        n=n,
        s=s,
        q=q,
        clause_a=clause_a,
        clause_b=clause_b,
        clause_c=clause_c,
        covered=clause_a or clause_b or clause_c,
        d_literal=d_literal,
        d_adjusted=d_adjusted,
        m_reg=m_reg,
        rhs_literal=rhs_literal,
        rhs_adjusted=rhs_adjusted,
        ineq_literal=ineq_literal,
        ineq_adjusted=ineq_adjusted,
        discrepancy=ineq_literal != ineq_adjusted,
    )


def report_to_dict(report: FeasibilityReport) -> dict:
    """Plain dict with +inf encoded as the string "inf" (JSON-safe)."""
    out = asdict(report)
    for key, value in out.items():
        if isinstance(value, float) and math.isinf(value):
            out[key] = "inf"
    return out
