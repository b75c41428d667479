"""Fundamental matrix and the exact localization of attainable rank values.

Everything downstream reads off X = (1 - alpha) * (I - alpha P_u)^{-1}:
its rows are limiting rank vectors under personalizations concentrated on
one node, each column's minimum and diagonal entry bound the attainable
rank of that node, and any interior value is realized constructively by
mixing two concentrated personalizations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    DegenerateIntervalError,
    DomainError,
    NumericalError,
    StructureError,
)
from .graph import DirectedGraph, dangling_indicator
from .stochastic import (
    DanglingDistribution,
    DEFAULT_ALPHA,
    PageRankVector,
    PersonalizationVector,
    RowStochasticMatrix,
    SOLVE_RESIDUAL_TOL,
    patch_dangling,
    row_stochastic,
    solve_rank_system,
)

ROW_SUM_CHECK_TOL = 1e-10
# Strict inequalities on X cannot be resolved past solver precision; entries
# within this guard of each other count as equal (argmin ties, nonnegativity).
FLOAT_RESOLUTION = 1e-12


@dataclass(frozen=True)
class FundamentalMatrix:
    """Dense X together with the damping factor it was built from."""

    x: np.ndarray
    alpha: float

    def __post_init__(self):
        x = np.array(self.x, dtype=float)
        if x.ndim != 2 or x.shape[0] != x.shape[1] or x.shape[0] == 0:
            raise DomainError("matrix must be square and nonempty")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        x.flags.writeable = False
        object.__setattr__(self, "x", x)

    @property
    def n(self) -> int:
        return self.x.shape[0]


@dataclass(frozen=True)
class StructureReport:
    """Verified structural facts about a computed X.

    ``column_margins[i]`` is the diagonal entry minus the largest
    off-diagonal entry of column i, strictly positive for every column.
    """

    column_margins: np.ndarray
    min_entry: float
    max_row_sum_error: float


@dataclass(frozen=True)
class PRInterval:
    """Open interval of attainable rank values of one node.

    ``lo_witness`` is the first row attaining the column minimum; rows
    within :data:`FLOAT_RESOLUTION` of the minimum count as attaining it.
    """

    node: int
    lo: float
    hi: float
    lo_witness: int


@dataclass(frozen=True)
class BasisFamilyVector:
    """Personalization with mass 1 - epsilon on one node, uniform elsewhere."""

    j: int
    epsilon: float
    v: PersonalizationVector


@dataclass(frozen=True)
class AchieveResult:
    """Mixture parameters realizing a requested rank value."""

    lam: float
    epsilon: float
    achieved: float
    v: PersonalizationVector


def fundamental_matrix(alpha: float, p_u: RowStochasticMatrix) -> FundamentalMatrix:
    """Build X row by row: row j solves the rank system with weight e_j.

    Basis vectors are admissible weights for the linear system even though
    they are not admissible personalizations.  One factorization backs all
    n solves; each row's residual is checked independently.
    """
    if not p_u.dangling_patched:
        raise DomainError("matrix must be dangling-patched first")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    n = p_u.n
    xt = solve_rank_system(alpha, p_u, np.eye(n), check_residual=False)
    a_t = np.eye(n) - alpha * p_u.p.T
    per_row = np.abs(a_t @ xt - (1.0 - alpha) * np.eye(n)).max(axis=0)
    worst = int(per_row.argmax())
    if per_row[worst] > SOLVE_RESIDUAL_TOL:
        raise NumericalError(
            f"row {worst}: residual {per_row[worst]:.3e} exceeds "
            f"{SOLVE_RESIDUAL_TOL:g}",
            details={"row": worst, "residual": float(per_row[worst])},
        )
    return FundamentalMatrix(x=xt.T, alpha=alpha)


def verify_structure(fm: FundamentalMatrix) -> StructureReport:
    """Check the guaranteed structure of X; a violation means solver breakdown.

    Asserts entrywise nonnegativity, unit row sums, and that each diagonal
    entry strictly dominates its column.  Returns the per-column dominance
    margins on success, raises :class:`StructureError` otherwise.
    """
    x = fm.x
    n = fm.n
    min_entry = float(x.min())
    row_sum_error = float(np.abs(x.sum(axis=1) - 1.0).max())
    off_diag = x.copy()
    np.fill_diagonal(off_diag, -np.inf)
    if n == 1:
        margins = np.array([np.diag(x)[0]])
    else:
        margins = np.diag(x) - off_diag.max(axis=0)
    failures = {}
    if min_entry < -FLOAT_RESOLUTION:
        failures["min_entry"] = min_entry
    if row_sum_error > ROW_SUM_CHECK_TOL:
        failures["row_sum_error"] = row_sum_error
    if n > 1 and margins.min() <= 0.0:
        failures["worst_margin"] = float(margins.min())
        failures["worst_column"] = int(margins.argmin())
    if failures:
        raise StructureError(
            f"fundamental matrix structure violated: {failures}", details=failures
        )
    margins.flags.writeable = False
    return StructureReport(
        column_margins=margins,
        min_entry=min_entry,
        max_row_sum_error=row_sum_error,
    )


def pr_interval(fm: FundamentalMatrix, i: int) -> PRInterval:
    """Open interval (column minimum, diagonal entry) for node i."""
    if fm.n == 1:
        raise DegenerateIntervalError(
            "single-node graph: the rank is identically 1"
        )
    if not 0 <= i < fm.n:
        raise DomainError(f"node index {i} out of range")
    col = fm.x[:, i]
    lo = float(col.min())
    witness = int(np.flatnonzero(col <= lo + FLOAT_RESOLUTION)[0])
    return PRInterval(node=i, lo=lo, hi=float(fm.x[i, i]), lo_witness=witness)


def basis_family(j: int, epsilon: float, n: int) -> BasisFamilyVector:
    """Vector with 1 - epsilon at node j and epsilon/(n-1) everywhere else."""
    if n < 2:
        raise DomainError("concentrated family needs at least 2 nodes")
    if not 0 <= j < n:
        raise DomainError(f"node index {j} out of range")
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    v = np.full(n, epsilon / (n - 1))
    v[j] = 1.0 - epsilon
    return BasisFamilyVector(j=j, epsilon=epsilon, v=PersonalizationVector(v=v))


def basis_family_matrix(epsilon: float, n: int) -> np.ndarray:
    """All n concentrated vectors at once, one per column."""
    if n < 2:
        raise DomainError("concentrated family needs at least 2 nodes")
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    m = np.full((n, n), epsilon / (n - 1))
    np.fill_diagonal(m, 1.0 - epsilon)
    return m


class RankContext:
    """Fixed damping factor and patched transition matrix.

    Caches the LU factorization of the rank system and the verified
    fundamental matrix, so repeated rank evaluations (bisection, halving
    searches, Monte-Carlo batches) cost one triangular solve each.
    """

    def __init__(self, alpha: float, p_u: RowStochasticMatrix):
        if not 0.0 < alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
        if not p_u.dangling_patched:
            raise DomainError("matrix must be dangling-patched first")
        self.alpha = alpha
        self.p_u = p_u
        self._lu = None
        self._fundamental = None
        self._structure = None

    @classmethod
    def from_graph(
        cls,
        g: DirectedGraph,
        alpha: float = DEFAULT_ALPHA,
        u: DanglingDistribution | None = None,
    ) -> "RankContext":
        if u is None:
            u = DanglingDistribution.uniform(g.n)
        p_u = patch_dangling(row_stochastic(g), dangling_indicator(g), u)
        return cls(alpha=alpha, p_u=p_u)

    @property
    def n(self) -> int:
        return self.p_u.n

    def _factorization(self):
        if self._lu is None:
            a_t = np.eye(self.n) - self.alpha * self.p_u.p.T
            self._lu = scipy.linalg.lu_factor(a_t)
        return self._lu

    def rank_weights(self, weights: np.ndarray) -> np.ndarray:
        """Rank vector(s) for raw weight vector(s); columns are independent."""
        w = np.asarray(weights, dtype=float)
        if w.shape[0] != self.n:
            raise DomainError("weight vector must have length n")
        return scipy.linalg.lu_solve(self._factorization(), (1.0 - self.alpha) * w)

    def rank(self, v: PersonalizationVector) -> PageRankVector:
        return PageRankVector(pi=self.rank_weights(v.v))

    def rank_component(self, v: PersonalizationVector, i: int) -> float:
        return float(self.rank_weights(v.v)[i])

    def fundamental(self) -> FundamentalMatrix:
        """Structure-verified X, computed once."""
        if self._fundamental is None:
            fm = fundamental_matrix(self.alpha, self.p_u)
            self._structure = verify_structure(fm)
            self._fundamental = fm
        return self._fundamental

    def structure(self) -> StructureReport:
        self.fundamental()
        return self._structure

    def interval(self, i: int) -> PRInterval:
        return pr_interval(self.fundamental(), i)

    def intervals(self) -> list[PRInterval]:
        return [self.interval(i) for i in range(self.n)]


def achieve_value(
    ctx: RankContext, i: int, target: float, tol: float = 1e-6
) -> AchieveResult:
    """Realize ``target`` as node i's rank value, within ``tol``.

    Fixes epsilon = min(1e-6, tol/10), then bisects the mixture weight
    between the personalization concentrated on i and the one concentrated
    on the column-minimum witness.  The rank component is affine in the
    mixture weight, so bisection converges unconditionally.
    """
    if tol <= 0.0:
        raise DomainError(f"tol must be positive, got {tol}")
    interval = ctx.interval(i)
    if not interval.lo < target < interval.hi:
        raise DomainError(
            f"target {target!r} outside the attainable open interval "
            f"({interval.lo!r}, {interval.hi!r})"
        )
    epsilon = min(1e-6, tol / 10.0)
    v_top = basis_family(i, epsilon, ctx.n).v.v
    v_bot = basis_family(interval.lo_witness, epsilon, ctx.n).v.v

    def at(lam: float) -> tuple[np.ndarray, float]:
        v = lam * v_top + (1.0 - lam) * v_bot
        return v, float(ctx.rank_weights(v)[i])

    _, f0 = at(0.0)
    _, f1 = at(1.0)
    if not min(f0, f1) <= target <= max(f0, f1):
        closest = f0 if abs(f0 - target) <= abs(f1 - target) else f1
        raise NumericalError(
            f"target {target!r} unreachable at epsilon floor {epsilon:g}; "
            f"closest achieved {closest!r}",
            details={"closest_achieved": closest, "epsilon": epsilon},
        )
    increasing = f1 >= f0
    lo_lam, hi_lam = 0.0, 1.0
    val = f0
    lam = 0.0
    for _ in range(200):
        lam = 0.5 * (lo_lam + hi_lam)
        v, val = at(lam)
        if abs(val - target) <= tol:
            return AchieveResult(
                lam=lam,
                epsilon=epsilon,
                achieved=val,
                v=PersonalizationVector(v=v),
            )
        if (val < target) == increasing:
            lo_lam = lam
        else:
            hi_lam = lam
    raise NumericalError(
        f"bisection stalled at {val!r} for target {target!r} (tol {tol:g})",
        details={"closest_achieved": val, "lambda": lam, "epsilon": epsilon},
    )
