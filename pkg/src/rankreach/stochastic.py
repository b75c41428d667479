"""Row-stochastic machinery: P, the dangling patch, the full rank matrix,
and the rank vector by power iteration or direct linear solve.

The two solvers are deliberately independent routes to the same vector and
are cross-checked against each other in the test suite.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, NumericalError, ParseError
from .graph import DanglingIndicator, DirectedGraph, adjacency

ROW_SUM_TOL = 1e-12
RANK_SUM_TOL = 1e-10
SOLVE_RESIDUAL_TOL = 1e-10
DENSE_SOLVE_CUTOFF = 2000
DEFAULT_ALPHA = 0.85
POWER_TOL = 1e-12


def _frozen_vector(raw, name: str, *, sum_tol: float) -> np.ndarray:
    v = np.array(raw, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise DomainError(f"{name} must be a nonempty vector")
    if not (v > 0).all():
        raise DomainError(f"{name} entries must be strictly positive")
    if abs(v.sum() - 1.0) > sum_tol:
        raise DomainError(f"{name} must sum to 1, got {v.sum()!r}")
    v.flags.writeable = False
    return v


@dataclass(frozen=True)
class DanglingDistribution:
    """Strictly positive probability vector replacing all-zero rows."""

    u: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "u", _frozen_vector(self.u, "dangling distribution", sum_tol=ROW_SUM_TOL)
        )

    @classmethod
    def uniform(cls, n: int) -> "DanglingDistribution":
        return cls(u=np.full(n, 1.0 / n))


@dataclass(frozen=True)
class PersonalizationVector:
    """Strictly positive probability vector biasing the teleport step."""

    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "v", _frozen_vector(self.v, "personalization vector", sum_tol=ROW_SUM_TOL)
        )

    @classmethod
    def uniform(cls, n: int) -> "PersonalizationVector":
        return cls(v=np.full(n, 1.0 / n))


@dataclass(frozen=True)
class RowStochasticMatrix:
    """Transition structure of the graph.

    Unpatched, rows of dangling nodes are all-zero and every other row sums
    to 1; patched, every row sums to 1.
    """

    p: np.ndarray
    dangling_patched: bool = False

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.ndim != 2 or p.shape[0] != p.shape[1] or p.shape[0] == 0:
            raise DomainError("transition matrix must be square and nonempty")
        if p.min() < 0.0 or p.max() > 1.0 + ROW_SUM_TOL:
            raise DomainError("transition entries must lie in [0, 1]")
        sums = p.sum(axis=1)
        off_one = np.abs(sums - 1.0) > ROW_SUM_TOL
        if self.dangling_patched:
            bad = off_one
        else:
            bad = off_one & (np.abs(sums) > ROW_SUM_TOL)
        if bad.any():
            row = int(np.flatnonzero(bad)[0])
            raise DomainError(f"row {row} sums to {sums[row]!r}, not stochastic")
        p.flags.writeable = False
        object.__setattr__(self, "p", p)

    @property
    def n(self) -> int:
        return self.p.shape[0]


@dataclass(frozen=True)
class GoogleMatrix:
    """Strictly positive, row-stochastic matrix driving the power iteration."""

    g: np.ndarray
    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        g = np.array(self.g, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise DomainError("matrix must be square")
        if not (g > 0.0).all():
            raise DomainError("entries must be strictly positive")
        if np.abs(g.sum(axis=1) - 1.0).max() > ROW_SUM_TOL:
            raise DomainError("rows must sum to 1")
        g.flags.writeable = False
        object.__setattr__(self, "g", g)

    @property
    def n(self) -> int:
        return self.g.shape[0]


@dataclass(frozen=True)
class PageRankVector:
    """Strictly positive rank vector summing to 1."""

    pi: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "pi", _frozen_vector(self.pi, "rank vector", sum_tol=RANK_SUM_TOL)
        )


def row_stochastic(g: DirectedGraph) -> RowStochasticMatrix:
    """Out-degree-normalized adjacency; rows of dangling nodes stay zero."""
    adj = adjacency(g)
    p = adj.a.astype(float)
    linked = adj.kout > 0
    p[linked] /= adj.kout[linked, None]
    return RowStochasticMatrix(p=p, dangling_patched=False)


def patch_dangling(
    p: RowStochasticMatrix, d: DanglingIndicator, u: DanglingDistribution
) -> RowStochasticMatrix:
    """Replace each dangling row with u^T, making every row stochastic."""
    if p.dangling_patched:
        raise DomainError("matrix is already dangling-patched")
    if d.d.shape != (p.n,) or u.u.shape != (p.n,):
        raise DomainError("dangling indicator and distribution must have length n")
    patched = p.p + np.outer(d.d.astype(float), u.u)
    return RowStochasticMatrix(p=patched, dangling_patched=True)


def google_matrix(
    alpha: float, p_u: RowStochasticMatrix, v: PersonalizationVector
) -> GoogleMatrix:
    """alpha * P_u plus (1 - alpha) times the rank-one teleport to v."""
    if not p_u.dangling_patched:
        raise DomainError("matrix must be dangling-patched first")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if v.v.shape != (p_u.n,):
        raise DomainError("personalization vector must have length n")
    g = alpha * p_u.p + (1.0 - alpha) * v.v[None, :]
    return GoogleMatrix(g=g, alpha=alpha)


def default_power_iterations(alpha: float, tol: float) -> int:
    # alpha bounds the contraction rate of the iteration, hence the cap.
    return 10 * math.ceil(math.log(tol) / math.log(alpha))


def pagerank_power(
    gm: GoogleMatrix, tol: float = POWER_TOL, max_iter: int | None = None
) -> PageRankVector:
    """Left fixed point of gm by power iteration from the uniform start.

    Returns x with ``||x G - x||_1 <= tol``; raises :class:`ConvergenceError`
    carrying the last residual when the cap is hit first.
    """
    if max_iter is None:
        max_iter = default_power_iterations(gm.alpha, tol)
    x = np.full(gm.n, 1.0 / gm.n)
    residual = math.inf
    for _ in range(max_iter):
        nxt = x @ gm.g
        residual = float(np.abs(nxt - x).sum())
        if residual <= tol:
            return PageRankVector(pi=x)
        x = nxt
    raise ConvergenceError(
        f"power iteration missed tol={tol:g} after {max_iter} iterations",
        details={"residual": residual, "tol": tol, "max_iter": max_iter},
    )


def _fixed_point_solve(alpha: float, p: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix-free route: iterate x <- alpha P^T x + (1-alpha) b to the limit."""
    step_tol = 1e-15
    cap = 10 * math.ceil(math.log(step_tol) / math.log(alpha))
    x = (1.0 - alpha) * np.array(b, dtype=float)
    for _ in range(cap):
        nxt = alpha * (p.T @ x) + (1.0 - alpha) * b
        delta = float(np.abs(nxt - x).max())
        x = nxt
        if delta <= step_tol:
            break
    return x


def solve_rank_system(
    alpha: float,
    p_u: RowStochasticMatrix,
    weights: np.ndarray,
    dense_cutoff: int = DENSE_SOLVE_CUTOFF,
    check_residual: bool = True,
) -> np.ndarray:
    """Solve (I - alpha P_u)^T x = (1 - alpha) w for one or many columns w.

    ``weights`` need not be positive (basis vectors are fine); the system is
    strictly diagonally dominant, hence nonsingular, for any alpha in (0, 1).
    A 2-D ``weights`` is treated as one system per column.  Callers that do
    their own per-column residual reporting pass ``check_residual=False``.
    """
    if not p_u.dangling_patched:
        raise DomainError("matrix must be dangling-patched first")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    w = np.asarray(weights, dtype=float)
    n = p_u.n
    if w.shape[0] != n:
        raise DomainError("weight vector must have length n")
    a_t = np.eye(n) - alpha * p_u.p.T
    if n <= dense_cutoff:
        x = np.linalg.solve(a_t, (1.0 - alpha) * w)
    elif w.ndim == 1:
        x = _fixed_point_solve(alpha, p_u.p, w)
    else:
        x = np.column_stack(
            [_fixed_point_solve(alpha, p_u.p, w[:, k]) for k in range(w.shape[1])]
        )
    if check_residual:
        residual = float(np.abs(a_t @ x - (1.0 - alpha) * w).max())
        if residual > SOLVE_RESIDUAL_TOL:
            raise NumericalError(
                f"linear solve residual {residual:.3e} exceeds "
                f"{SOLVE_RESIDUAL_TOL:g}",
                details={"residual": residual, "n": n},
            )
    return x


def pagerank_solve(
    alpha: float,
    p_u: RowStochasticMatrix,
    v: PersonalizationVector,
    dense_cutoff: int = DENSE_SOLVE_CUTOFF,
) -> PageRankVector:
    """Rank vector by direct solve of the teleport-factored linear system."""
    if v.v.shape != (p_u.n,):
        raise DomainError("personalization vector must have length n")
    x = solve_rank_system(alpha, p_u, v.v, dense_cutoff=dense_cutoff)
    return PageRankVector(pi=x)


@dataclass(frozen=True)
class StochasticConfig:
    """Damping factor plus dangling/personalization specs.

    A spec is either the string ``"uniform"`` or an explicit tuple of
    floats, validated on load.
    """

    alpha: float = DEFAULT_ALPHA
    u_spec: str | tuple[float, ...] = "uniform"
    v_spec: str | tuple[float, ...] = "uniform"

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        for name, spec in (("u", self.u_spec), ("v", self.v_spec)):
            if isinstance(spec, str):
                if spec != "uniform":
                    raise DomainError(f'{name} spec must be "uniform" or a vector')
            else:
                _frozen_vector(spec, f"{name} vector", sum_tol=ROW_SUM_TOL)

    def dangling_distribution(self, n: int) -> DanglingDistribution:
        if self.u_spec == "uniform":
            return DanglingDistribution.uniform(n)
        if len(self.u_spec) != n:
            raise DomainError(f"u vector has length {len(self.u_spec)}, graph has {n} nodes")
        return DanglingDistribution(u=np.array(self.u_spec))

    def personalization(self, n: int) -> PersonalizationVector:
        if self.v_spec == "uniform":
            return PersonalizationVector.uniform(n)
        if len(self.v_spec) != n:
            raise DomainError(f"v vector has length {len(self.v_spec)}, graph has {n} nodes")
        return PersonalizationVector(v=np.array(self.v_spec))


def load_config(text: str) -> StochasticConfig:
    """Parse the config JSON ``{"alpha": float, "u": [...]|"uniform", "v": ...}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid config JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("config must be a JSON object")
    unknown = set(doc) - {"alpha", "u", "v"}
    if unknown:
        raise ParseError(f"unknown config keys: {sorted(unknown)}")

    def vector_spec(key):
        spec = doc.get(key, "uniform")
        if isinstance(spec, str):
            return spec
        if isinstance(spec, list):
            return tuple(float(x) for x in spec)
        raise ParseError(f'config "{key}" must be "uniform" or a list of floats')

    alpha = doc.get("alpha", DEFAULT_ALPHA)
    if isinstance(alpha, bool) or not isinstance(alpha, (int, float)):
        raise ParseError('config "alpha" must be a number')
    return StochasticConfig(
        alpha=float(alpha), u_spec=vector_spec("u"), v_spec=vector_spec("v")
    )
