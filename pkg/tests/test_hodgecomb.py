import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reference_diamonds import APPENDED_CURVE, APPENDED_FOURFOLD, SMOOTH_CUBIC_7, X33
from xld.exactalg import MHSClass, TruncPoly, binomial
from xld.hodgecomb import (
    GradedMHS,
    PureSummand,
    append_blocks,
    assemble_diamond,
    euler_class,
    multiplicities,
    smooth_hypersurface,
    smooth_primitive_hodge,
    xld_cohomology,
)


def multiplicities_by_sum(l, d):
    """a_i straight from the defining sum over (i_1, ..., i_l)."""
    out = [0] * (l * (d - 2) + 1)
    for idx in itertools.product(range(d - 1), repeat=l):
        out[sum(idx)] += math.prod(binomial(d - 1, i) for i in idx)
    return out


def primitive_betti_from_euler(n, d):
    """Primitive middle Betti number via chi = d * [h^n] (1+h)^{n+2} / (1+dh)."""
    chi = d * sum(binomial(n + 2, k) * (-d) ** (n - k) for k in range(n + 1))
    return (-1) ** n * (chi - (n + 1))


def upper_rows(diamond):
    return {k: diamond.row(k) for k in range(diamond.dim, 2 * diamond.dim + 1)}


def test_multiplicities_examples():
    assert multiplicities(1, 3) == [1, 2]
    assert multiplicities(2, 2) == [1]
    assert multiplicities(3, 3) == [1, 6, 12, 8]
    assert multiplicities(2, 3) == [1, 4, 4]


def test_multiplicities_rejects_bad_input():
    with pytest.raises(ValueError):
        multiplicities(0, 3)
    with pytest.raises(ValueError):
        multiplicities(2, 1)


@pytest.mark.parametrize("l", range(1, 6))
@pytest.mark.parametrize("d", range(2, 7))
def test_multiplicities_match_defining_sum(l, d):
    a = multiplicities(l, d)
    assert a == multiplicities_by_sum(l, d)
    assert len(a) == l * (d - 2) + 1
    assert all(x > 0 for x in a)
    assert sum(a) == (2 ** (d - 1) - 1) ** l


def test_smooth_primitive_hodge_examples():
    assert smooth_primitive_hodge(4, 3).table == {(3, 1): 1, (2, 2): 20, (1, 3): 1}
    h7 = smooth_primitive_hodge(7, 3).table
    assert [h7.get((p, 7 - p), 0) for p in range(7, -1, -1)] == [0, 0, 1, 84, 84, 1, 0, 0]
    assert smooth_primitive_hodge(1, 3).table == {(1, 0): 1, (0, 1): 1}
    # quadrics: one primitive class in even dimension, none in odd
    assert smooth_primitive_hodge(4, 2).table == {(2, 2): 1}
    assert smooth_primitive_hodge(3, 2).table == {}
    # quartic surface and quintic threefold
    assert smooth_primitive_hodge(2, 4).table == {(2, 0): 1, (1, 1): 19, (0, 2): 1}
    assert smooth_primitive_hodge(3, 5).table == {(3, 0): 1, (2, 1): 101, (1, 2): 101, (0, 3): 1}


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("d", range(2, 5))
def test_smooth_primitive_hodge_symmetric_and_euler(n, d):
    s = smooth_primitive_hodge(n, d)
    assert s.is_symmetric()
    assert s.dim == primitive_betti_from_euler(n, d)


def test_append_fourfold():
    y = append_blocks(smooth_hypersurface(4, 3), 4, 1, 3)
    assert y.dim_X == 7
    assert y.hodge_numbers(8) == {(5, 3): 2, (4, 4): 40, (3, 5): 2}
    assert y.degrees() == [7, 8]


def test_append_empty():
    y = append_blocks(GradedMHS(3), 3, 2, 3)
    assert y.degrees() == []


def test_append_curve():
    y = append_blocks(smooth_hypersurface(1, 3), 1, 2, 3)
    assert y.hodge_numbers(7) == {(3, 2): 1, (2, 3): 1}
    assert y.summands(7) == {smooth_primitive_hodge(1, 3).twist(2): 1}


def test_append_rejects_low_degree():
    x = GradedMHS(4, {2: [PureSummand.tate(1)]})
    with pytest.raises(ValueError):
        append_blocks(x, 4, 1, 3)


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("l1,l2", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_append_is_associative(d, l1, l2):
    x = smooth_hypersurface(2, d)
    two_steps = append_blocks(append_blocks(x, 2, l1, d), 2 + l1 * d, l2, d)
    assert two_steps == append_blocks(x, 2, l1 + l2, d)


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("l1,l2", [(1, 1), (1, 2), (2, 1)])
def test_xld_is_appending_to_xld(d, l1, l2):
    # X_{l1+l2,d} arises from X_{l1,d} by appending l2 blocks
    got = append_blocks(xld_cohomology(l1, d), l1 * d - 2, l2, d)
    assert got == xld_cohomology(l1 + l2, d)


def test_xld_cohomology_examples():
    g = xld_cohomology(2, 2)
    assert g.degrees() == [2] and g.summands(2) == {PureSummand.tate(1): 1}
    g = xld_cohomology(3, 3)
    assert {k: g.hodge_numbers(k) for k in g.degrees()} == {
        7: {(2, 2): 1},
        8: {(3, 3): 6},
        9: {(4, 4): 12},
        10: {(5, 5): 8},
    }
    for d in range(2, 7):
        g = xld_cohomology(1, d)
        assert {k: g.hodge_numbers(k) for k in g.degrees()} == {
            d - 2 + i: {(i, i): binomial(d - 1, i)} for i in range(d - 1)
        }
    assert xld_cohomology(4, 3).is_hodge_tate()


def test_reference_diamonds():
    assert upper_rows(assemble_diamond(smooth_hypersurface(7, 3))) == SMOOTH_CUBIC_7
    assert upper_rows(assemble_diamond(xld_cohomology(3, 3))) == X33
    y = append_blocks(smooth_hypersurface(4, 3), 4, 1, 3)
    assert upper_rows(assemble_diamond(y)) == APPENDED_FOURFOLD
    y = append_blocks(smooth_hypersurface(1, 3), 1, 2, 3)
    assert upper_rows(assemble_diamond(y)) == APPENDED_CURVE


def test_x33_named_entries():
    D = assemble_diamond(xld_cohomology(3, 3))
    assert (D[5, 5], D[4, 5], D[3, 5], D[2, 5]) == (9, 12, 6, 1)


def test_quadric_surface_diamond():
    D = assemble_diamond(xld_cohomology(2, 2))
    assert D.rows() == [[1], [0, 0], [0, 2, 0], [0, 0], [1]]


def test_assemble_rejects_low_degree():
    with pytest.raises(ValueError):
        assemble_diamond(GradedMHS(4, {2: [PureSummand.tate(1)]}))


@pytest.mark.parametrize("l,d", [(l, d) for l in range(1, 4) for d in range(2, 5)])
def test_lower_half_is_projective_space(l, d):
    D = assemble_diamond(xld_cohomology(l, d))
    n = D.dim
    for k in range(n):
        expect = [1 if (k % 2 == 0 and p == k // 2) else 0 for p in range(min(k, n), max(0, k - n) - 1, -1)]
        assert D.row(k) == expect


def test_euler_class_examples():
    assert euler_class(xld_cohomology(2, 3)) == MHSClass.from_poly(TruncPoly([1, 2, -3, 5, 1]))
    assert euler_class(GradedMHS(3), include_hyperplane=False).is_zero()
    assert euler_class(xld_cohomology(2, 2)) == MHSClass.from_poly(TruncPoly([1, 2, 1]))


def test_euler_class_rejects_non_tate():
    with pytest.raises(ValueError):
        euler_class(smooth_hypersurface(4, 3))


@pytest.mark.parametrize("l,d", [(l, d) for l in range(1, 5) for d in range(2, 6)])
def test_euler_class_closed_form(l, d):
    # sum_i (-1)^i [H^i] = (u^{ld-1}-1)/(u-1) + u^{l-1} (u^{d-1} - (u-1)^{d-1})^l
    block = TruncPoly.monomial(d - 1) - TruncPoly([-1, 1]) ** (d - 1)
    expect = TruncPoly.geometric(l * d - 1) + (block**l).shift(l - 1)
    assert euler_class(xld_cohomology(l, d)).to_poly() == expect


@given(st.integers(0, 6), st.integers(-3, 3), st.integers(0, 5))
def test_twist_shifts_bidegree(p, k, h):
    s = PureSummand({(p, p + 1): h, (p + 1, p): h})
    t = s.twist(k)
    assert t.dim == s.dim
    if h:
        assert t.weight == s.weight + 2 * k


def test_pure_summand_validation():
    with pytest.raises(ValueError):
        PureSummand({(1, 1): 1, (2, 1): 1})
    with pytest.raises(ValueError):
        PureSummand({(1, 1): -1})
