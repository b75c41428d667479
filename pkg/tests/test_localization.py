import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankreach import (
    DanglingDistribution,
    DegenerateIntervalError,
    DomainError,
    FundamentalMatrix,
    PersonalizationVector,
    RankContext,
    StructureError,
    achieve_value,
    basis_family,
    basis_family_matrix,
    dangling_indicator,
    fundamental_matrix,
    parse_edge_list,
    parse_graph_json,
    patch_dangling,
    pr_interval,
    row_stochastic,
    verify_structure,
)

from .golden import (
    BASIS_LIMIT_G1,
    CYCLE2_DIAG,
    CYCLE2_OFF,
    INTERVALS_G1,
    INTERVALS_G2,
    INTERVALS_G3,
    LO_WITNESS_G1,
    LO_WITNESS_G3,
    X1_4DP,
    X1_EXACT,
    X2_4DP,
    X3_4DP,
)
from .helpers import random_context, random_row_stochastic, rng_for


def test_fundamental_matrix_g1(ctx1):
    x = ctx1.fundamental().x
    assert np.abs(x - X1_4DP).max() <= 1e-4
    assert np.abs(x - X1_EXACT).max() <= 1e-9


def test_fundamental_matrix_g2_g3(ctx2, ctx3):
    assert np.abs(ctx2.fundamental().x - X2_4DP).max() <= 1e-4
    assert np.abs(ctx3.fundamental().x - X3_4DP).max() <= 1e-4


def test_fundamental_matrix_two_cycle_closed_form(ctx_cycle):
    expected = np.array([[CYCLE2_DIAG, CYCLE2_OFF], [CYCLE2_OFF, CYCLE2_DIAG]])
    assert np.abs(ctx_cycle.fundamental().x - expected).max() <= 1e-12


def test_fundamental_matrix_preconditions(g1):
    p = row_stochastic(g1)
    with pytest.raises(DomainError, match="patched"):
        fundamental_matrix(0.85, p)
    p_u = patch_dangling(p, dangling_indicator(g1), DanglingDistribution.uniform(3))
    with pytest.raises(DomainError, match="alpha"):
        fundamental_matrix(1.0, p_u)


def test_structure_report_g1(ctx1):
    report = ctx1.structure()
    assert report.min_entry >= 0.0
    assert report.max_row_sum_error <= 1e-10
    # column 0 margin: diagonal minus the largest off-diagonal entry
    assert abs(report.column_margins[0] - 0.1053) <= 1e-4
    assert report.column_margins.min() > 0.0


def test_structure_passes_with_exact_zero_block(ctx3):
    x = ctx3.fundamental().x
    assert np.abs(x[3:, :3]).max() <= 1e-12
    report = ctx3.structure()
    assert report.min_entry >= -1e-12
    assert report.column_margins.min() > 0.0


def test_structure_holds_for_random_row_stochastic_matrices():
    rng = rng_for(20260811)
    for _ in range(20):
        n = int(rng.integers(2, 21))
        alpha = float(rng.uniform(0.05, 0.95))
        fm = fundamental_matrix(alpha, random_row_stochastic(rng, n))
        report = verify_structure(fm)
        assert report.column_margins.min() > 0.0


def test_structure_detects_tampering():
    with pytest.raises(StructureError, match="margin"):
        verify_structure(FundamentalMatrix(
            x=np.array([[0.4, 0.6], [0.7, 0.3]]), alpha=0.85))
    with pytest.raises(StructureError, match="row_sum"):
        verify_structure(FundamentalMatrix(
            x=np.array([[0.6, 0.3], [0.2, 0.7]]), alpha=0.85))
    with pytest.raises(StructureError, match="min_entry"):
        verify_structure(FundamentalMatrix(
            x=np.array([[1.1, -0.1], [0.4, 0.6]]), alpha=0.85))


@pytest.mark.parametrize(
    "ctx_name,expected",
    [("ctx1", INTERVALS_G1), ("ctx2", INTERVALS_G2), ("ctx3", INTERVALS_G3)],
)
def test_intervals_match_reference(ctx_name, expected, request):
    ctx = request.getfixturevalue(ctx_name)
    for node, (lo, hi) in expected.items():
        iv = ctx.interval(node)
        assert abs(iv.lo - lo) <= 1e-4
        assert abs(iv.hi - hi) <= 1e-4
        assert iv.lo < iv.hi


def test_reducible_network_has_exact_zero_infima(ctx3):
    for node in (0, 1, 2):
        assert ctx3.interval(node).lo <= 1e-12


def test_lo_witness_selection(ctx1, ctx3):
    for node, row in LO_WITNESS_G1.items():
        assert ctx1.interval(node).lo_witness == row
    # rows 3..5 tie at exactly zero; the smallest index wins
    for node, row in LO_WITNESS_G3.items():
        assert ctx3.interval(node).lo_witness == row


def test_interval_degenerate_and_bad_index(ctx1):
    single = RankContext.from_graph(parse_edge_list("1 1"))
    with pytest.raises(DegenerateIntervalError):
        single.interval(0)
    with pytest.raises(DomainError, match="out of range"):
        pr_interval(ctx1.fundamental(), 5)


def test_interval_sums_bracket_one(ctx1, ctx2, ctx3):
    for ctx in (ctx1, ctx2, ctx3):
        ivs = ctx.intervals()
        assert sum(iv.hi for iv in ivs) >= 1.0
        assert sum(iv.lo for iv in ivs) <= 1.0


def test_basis_family_construction():
    fam = basis_family(1, 0.1, 3)
    assert np.abs(fam.v.v - [0.05, 0.9, 0.05]).max() <= 1e-15
    assert basis_family(0, 0.5, 2).v.v.tolist() == [0.5, 0.5]
    m = basis_family_matrix(0.1, 3)
    assert np.abs(m[:, 1] - fam.v.v).max() == 0.0


def test_basis_family_domain_errors():
    with pytest.raises(DomainError):
        basis_family(0, 0.1, 1)
    with pytest.raises(DomainError, match="epsilon"):
        basis_family(0, 0.0, 3)
    with pytest.raises(DomainError, match="epsilon"):
        basis_family(0, 1.0, 3)
    with pytest.raises(DomainError, match="out of range"):
        basis_family(3, 0.1, 3)


def test_concentrated_family_limit_is_matrix_row(ctx1):
    val = ctx1.rank_component(basis_family(0, 1e-3, 3).v, 0)
    assert abs(val - BASIS_LIMIT_G1) <= 1e-9
    errors = []
    x = ctx1.fundamental().x
    for eps in (1e-2, 1e-3, 1e-4):
        pi = ctx1.rank(basis_family(0, eps, 3).v).pi
        errors.append(np.abs(pi - x[0]).max())
        assert errors[-1] <= 2.0 * eps
    assert errors[0] > errors[1] > errors[2]


def test_rank_component_affine_in_mixture_weight(ctx2):
    v0 = basis_family(1, 1e-4, 5).v.v
    v1 = basis_family(3, 1e-4, 5).v.v

    def f(lam):
        return float(ctx2.rank_weights(lam * v1 + (1 - lam) * v0)[3])

    assert abs(f(0.5) - 0.5 * (f(0.0) + f(1.0))) <= 1e-12


def test_achieve_value_g1(ctx1):
    result = achieve_value(ctx1, 0, 0.35, tol=1e-6)
    assert abs(result.achieved - 0.35) <= 1e-6
    assert 0.0 <= result.lam <= 1.0
    assert result.epsilon == 1e-7
    # the returned personalization really produces the achieved value
    assert abs(ctx1.rank_component(result.v, 0) - result.achieved) <= 1e-15


def test_achieve_value_rejects_outside_targets(ctx1):
    iv = ctx1.interval(0)
    for target in (0.45, iv.lo, iv.hi, iv.lo - 0.01, iv.hi + 0.01):
        with pytest.raises(DomainError, match="outside"):
            achieve_value(ctx1, 0, target)
    with pytest.raises(DomainError, match="tol"):
        achieve_value(ctx1, 0, 0.35, tol=0.0)


def test_achieve_value_hits_midpoints_on_random_graphs():
    rng = rng_for(31)
    for _ in range(10):
        ctx = random_context(rng, int(rng.integers(2, 12)))
        node = int(rng.integers(ctx.n))
        iv = ctx.interval(node)
        target = 0.5 * (iv.lo + iv.hi)
        result = achieve_value(ctx, node, target, tol=1e-6)
        assert abs(result.achieved - target) <= 1e-6


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_sampled_rank_values_stay_strictly_inside_intervals(ctx1, seed):
    rng = rng_for(seed)
    w = rng.random(3) + 1e-6
    v = PersonalizationVector(v=w / w.sum())
    pi = ctx1.rank(v).pi
    for iv in ctx1.intervals():
        assert iv.lo < pi[iv.node] < iv.hi


def test_fundamental_matrix_agrees_with_library_inverse():
    rng = rng_for(5150)
    for _ in range(10):
        ctx = random_context(rng, int(rng.integers(2, 11)))
        explicit = 0.15 * np.linalg.inv(np.eye(ctx.n) - 0.85 * ctx.p_u.p)
        assert np.abs(ctx.fundamental().x - explicit).max() <= 1e-12


def test_context_caches_fundamental(ctx1):
    assert ctx1.fundamental() is ctx1.fundamental()


def test_context_from_json_graph_with_isolated_node():
    g = parse_graph_json('{"nodes": ["a", "b", "c"], "edges": [[0, 1]]}')
    ctx = RankContext.from_graph(g)
    assert ctx.structure().column_margins.min() > 0.0
