from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from xld.kvol import (
    RouteMismatch,
    ValuationModel,
    anticanonical_volume,
    beta_identity,
    beta_integral,
    delta_bound,
    delta_certificate,
    s_p,
    s_x,
    s_x_direct,
    s_x_transfer,
    vol_x,
)

X, A = sp.symbols("x alpha", nonnegative=True)
MODELS = ("hyperplane_order", "point_blowup")


def sym_profile(kind, n, r):
    b = A / r
    if kind == "hyperplane_order":
        return (X - b) ** n
    return X**n - b**n


def sym_vol_x(l, d, kind, alpha, r=1):
    """Volume of -K_X along v >= alpha with sympy, integrating only where the profile lives."""
    n = l - 2
    c = sp.factorial(l * d - 2) * d ** (l * d - 1) / (sp.factorial(l - 2) * sp.factorial(l * d - l - 1))
    w = (l - 1 - X) ** (l * (d - 1) - 1)
    if kind == "trivial":
        return c * sp.integrate(w * X**n, (X, 0, l - 1)) if alpha == 0 else 0
    lo = sp.Rational(alpha) / r
    if lo >= l - 1:
        return 0
    return c * sp.integrate((w * sym_profile(kind, n, r)).subs(A, alpha), (X, lo, l - 1))


def sym_s_x(l, d, kind, r=1):
    n = l - 2
    c = sp.factorial(l * d - 2) * d ** (l * d - 1) / (sp.factorial(l - 2) * sp.factorial(l * d - l - 1))
    w = (l - 1 - X) ** (l * (d - 1) - 1)
    inner = sp.integrate(sym_profile(kind, n, r), (A, 0, r * X))
    return c * sp.integrate(w * inner, (X, 0, l - 1)) / anticanonical_volume(l, d)


def to_fraction(v):
    v = sp.Rational(v)
    return Fraction(int(v.p), int(v.q))


def test_model_validation():
    with pytest.raises(ValueError):
        ValuationModel("cusp", 2)
    with pytest.raises(ValueError):
        ValuationModel("point_blowup", 0)
    with pytest.raises(ValueError):
        ValuationModel("hyperplane_order", 1, Fraction(-1))
    m = ValuationModel.for_l("point_blowup", 5)
    assert m.n == 3 and m.A == 3
    assert ValuationModel.for_l("hyperplane_order", 4, 3).A == 3
    assert ValuationModel.for_l("trivial", 2).A == 0


@pytest.mark.parametrize("kind", MODELS)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_vol_fn_shape(kind, n):
    m = ValuationModel(kind, n)
    for x in (Fraction(1, 2), Fraction(1), Fraction(3, 2)):
        assert m.vol_fn(x, 0) == x**n
        vals = [m.vol_fn(x, Fraction(k, 8)) for k in range(16)]
        assert all(a >= b for a, b in zip(vals, vals[1:]))
        assert m.vol_fn(x, x) == 0 and m.vol_fn(x, x + 1) == 0


def test_s_p_examples():
    # P^1, a point: S = 1
    assert s_p(ValuationModel.for_l("hyperplane_order", 3)) == 1
    assert s_p(ValuationModel.for_l("point_blowup", 3)) == 1
    # P^n: hyperplane S = 1, exceptional divisor over a point S = n
    for n in range(1, 6):
        assert s_p(ValuationModel("hyperplane_order", n)) == 1
        assert s_p(ValuationModel("point_blowup", n)) == n
    with pytest.raises(ValueError):
        s_p(ValuationModel("trivial", 2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("kind", MODELS)
def test_s_p_against_sympy(kind, n):
    # S w.r.t. -K = (n+1)H, straight from the definition with vol(-K) = (n+1)^n
    beta = sp.Symbol("beta", nonnegative=True)
    prof = sym_profile(kind, n, 1).subs({X: 1, A: beta / (n + 1)}) * (n + 1) ** n
    expect = sp.integrate(prof, (beta, 0, n + 1)) / (n + 1) ** n
    assert s_p(ValuationModel(kind, n)) == to_fraction(expect)


@pytest.mark.parametrize("l,d", [(2, 3), (3, 2), (3, 3), (2, 2), (4, 2), (2, 5)])
def test_anticanonical_volume(l, d):
    assert vol_x(l, d, ValuationModel.for_l("trivial", l), 0) == anticanonical_volume(l, d)
    assert vol_x(l, d, ValuationModel.for_l("trivial", l), Fraction(1, 3)) == 0


def test_vol_x_examples():
    assert vol_x(3, 2, ValuationModel.for_l("point_blowup", 3), 0) == 512
    assert vol_x(3, 2, ValuationModel.for_l("hyperplane_order", 3), 50) == 0
    with pytest.raises(ValueError):
        vol_x(3, 2, ValuationModel.for_l("point_blowup", 3), -1)
    with pytest.raises(ValueError):
        vol_x(3, 2, ValuationModel.for_l("point_blowup", 4), 0)


@pytest.mark.parametrize("l,d", [(3, 2), (3, 3), (4, 2), (4, 3)])
@pytest.mark.parametrize("kind", MODELS)
def test_vol_x_against_sympy(l, d, kind):
    m = ValuationModel.for_l(kind, l)
    for alpha in (0, Fraction(1, 3), Fraction(1), Fraction(5, 2)):
        assert vol_x(l, d, m, alpha) == to_fraction(sym_vol_x(l, d, kind, sp.Rational(alpha.numerator, alpha.denominator)))


@pytest.mark.parametrize("l,d", [(3, 2), (3, 3), (4, 2), (4, 3)])
@pytest.mark.parametrize("kind", MODELS)
def test_vol_x_nonincreasing(l, d, kind):
    m = ValuationModel.for_l(kind, l)
    vals = [vol_x(l, d, m, Fraction(k, 10)) for k in range(10 * (l - 1) + 3)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    assert vals[0] == anticanonical_volume(l, d) and vals[-1] == 0


@pytest.mark.parametrize("l", [3, 4, 5])
@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("kind", MODELS)
def test_s_x_routes(l, d, kind):
    m = ValuationModel.for_l(kind, l)
    assert s_x_direct(l, d, m) == s_x_transfer(l, d, m) == s_x(l, d, m)


@pytest.mark.parametrize("l,d", [(3, 2), (4, 3)])
@pytest.mark.parametrize("kind", MODELS)
def test_s_x_against_sympy(l, d, kind):
    assert s_x_direct(l, d, ValuationModel.for_l(kind, l)) == to_fraction(sym_s_x(l, d, kind))


def test_s_x_example():
    m = ValuationModel.for_l("hyperplane_order", 3)
    assert s_x(3, 2, m) == Fraction(2, 5) * s_p(m)


@settings(max_examples=30, deadline=None)
@given(st.fractions(min_value=Fraction(1, 7), max_value=10, max_denominator=7), st.sampled_from(MODELS), st.integers(3, 4))
def test_s_x_scales_with_valuation(r, kind, l):
    base = ValuationModel.for_l(kind, l)
    scaled = ValuationModel.for_l(kind, l, r)
    assert s_x(l, 3, scaled) == r * s_x(l, 3, base)
    assert scaled.A / s_x(l, 3, scaled) == base.A / s_x(l, 3, base)


def test_beta_examples():
    assert beta_identity(2, 3) and beta_identity(3, 3) and beta_identity(2, 2)
    assert beta_integral(3, 1) == Fraction(1, 20)
    assert beta_integral(0, 0) == 1


def test_beta_grid():
    assert all(beta_identity(l, d) for l in range(2, 7) for d in range(2, 7))


def test_delta_certificate():
    for l in (3, 4, 5):
        for d in (2, 3):
            reps = delta_certificate(l, d)
            assert [r.kind for r in reps] == list(MODELS)
            for r in reps:
                assert r.ratio == r.A / r.S_x
                assert r.ratio >= r.delta_bound == delta_bound(l, d) > 1
                assert r.A / r.S_p == 1
    (only,) = delta_certificate(2, 4)
    assert only.kind == "bound_only" and only.delta_bound == 7 and only.ratio is None
    js = delta_certificate(3, 2)[0].to_json()
    assert js["ratio"] == "5/2" and js["ratio_float"] == 2.5


def test_route_mismatch_is_arithmetic_error():
    assert issubclass(RouteMismatch, ArithmeticError)
