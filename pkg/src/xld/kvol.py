"""Volumes and S-invariants of torus-invariant valuations on ``X_{l,d}``,
obtained from valuations ``v0`` on ``P^{l-2}``.

Every volume profile used here is a polynomial on the region
``0 <= alpha <= r x`` and zero beyond it, so all integrals are evaluated
exactly in rational arithmetic.  Floats only appear in reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .exactalg import binomial

__all__ = [
    "KINDS",
    "RouteMismatch",
    "ValuationModel",
    "ValuationReport",
    "anticanonical_volume",
    "s_p",
    "vol_x",
    "s_x_direct",
    "s_x_transfer",
    "s_x",
    "beta_integral",
    "beta_identity",
    "delta_bound",
    "delta_certificate",
]

KINDS = ("trivial", "hyperplane_order", "point_blowup")


class RouteMismatch(ArithmeticError):
    """Two independent evaluations of the same quantity disagree."""


# -- univariate polynomials with Fraction coefficients, low degree first --


def _mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1) if p and q else []
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _eval(p: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for a in reversed(p):
        acc = acc * x + a
    return acc


def _integrate(p: Sequence[Fraction], lo, hi) -> Fraction:
    anti = [Fraction(0)] + [a / (k + 1) for k, a in enumerate(p)]
    return _eval(anti, hi) - _eval(anti, lo)


def _weight(l: int, d: int) -> list[Fraction]:
    """``(l-1-x)^{l(d-1)-1}`` expanded in ``x``."""
    e = l * (d - 1) - 1
    c = l - 1
    return [Fraction(binomial(e, k) * c ** (e - k) * (-1) ** k) for k in range(e + 1)]


@dataclass(frozen=True)
class ValuationModel:
    """A valuation ``r * ord_E`` on ``P^n`` with a closed-form volume profile.

    ``hyperplane_order``: ``E`` a hyperplane, ``vol(xH; >= alpha) = (x - alpha/r)^n``.
    ``point_blowup``: ``E`` the exceptional divisor over a point,
    ``vol = x^n - (alpha/r)^n``.  Both vanish once ``alpha >= r x``.
    ``trivial``: no filtration; ``vol = x^n`` at ``alpha = 0`` and zero after.
    """

    kind: str
    n: int
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown valuation kind {self.kind!r}; expected one of {KINDS}")
        if self.n < 0:
            raise ValueError("negative dimension")
        if self.kind != "trivial" and self.n < 1:
            raise ValueError(f"{self.kind} needs P^n with n >= 1")
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    @classmethod
    def for_l(cls, kind: str, l: int, scale=1) -> "ValuationModel":
        return cls(kind, l - 2, Fraction(scale))

    @property
    def log_discrepancy(self) -> Fraction:
        if self.kind == "trivial":
            return Fraction(0)
        base = 1 if self.kind == "hyperplane_order" else self.n
        return self.scale * base

    A = log_discrepancy

    def profile(self) -> dict[tuple[int, int], Fraction]:
        """Coefficients ``c_ij`` of ``x^i beta^j`` on the support, ``beta = alpha / r``."""
        n = self.n
        if self.kind == "hyperplane_order":
            return {(n - k, k): Fraction(binomial(n, k) * (-1) ** k) for k in range(n + 1)}
        if self.kind == "point_blowup":
            return {(n, 0): Fraction(1), (0, n): Fraction(-1)}
        return {(n, 0): Fraction(1)}

    def vol_fn(self, x, alpha) -> Fraction:
        x, alpha = Fraction(x), Fraction(alpha)
        if alpha < 0:
            raise ValueError("alpha must be nonnegative")
        if self.kind == "trivial":
            return x**self.n if alpha == 0 else Fraction(0)
        beta = alpha / self.scale
        if beta >= x:
            return Fraction(0)
        return sum((c * x**i * beta**j for (i, j), c in self.profile().items()), Fraction(0))


def _check_model(l: int, v0: ValuationModel) -> None:
    if v0.n != l - 2:
        raise ValueError(f"model lives on P^{v0.n}, but l={l} needs P^{l - 2}")


def _check_ld(l: int, d: int) -> None:
    if l < 2 or d < 2:
        raise ValueError(f"need l >= 2 and d >= 2, got l={l}, d={d}")


def _volume_constant(l: int, d: int) -> Fraction:
    return Fraction(factorial(l * d - 2) * d ** (l * d - 1), factorial(l - 2) * factorial(l * d - l - 1))


def anticanonical_volume(l: int, d: int) -> int:
    """``(-K_X)^{ld-2} = d^{ld-1} (l-1)^{ld-2}``."""
    _check_ld(l, d)
    return d ** (l * d - 1) * (l - 1) ** (l * d - 2)


def s_p(v0: ValuationModel) -> Fraction:
    """``S`` of ``v0`` on ``P^n`` with respect to ``-K = (n+1)H``: ``(n+1) int vol(H; >= alpha)``."""
    if v0.kind == "trivial":
        raise ValueError("S is not defined for the trivial valuation")
    # vol(H; >= alpha) = P(1, alpha/r) on [0, r]
    coeffs = [Fraction(0)] * (v0.n + 1)
    for (_, j), c in v0.profile().items():
        coeffs[j] += c
    return (v0.n + 1) * v0.scale * _integrate(coeffs, 0, 1)


def vol_x(l: int, d: int, v0: ValuationModel, alpha) -> Fraction:
    """``vol(-K_X; v >= alpha)`` from the volume profile of ``v0``."""
    _check_ld(l, d)
    _check_model(l, v0)
    alpha = Fraction(alpha)
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    top = l - 1
    if v0.kind == "trivial":
        if alpha > 0:
            return Fraction(0)
        lo, beta = Fraction(0), Fraction(0)
    else:
        beta = alpha / v0.scale
        if beta >= top:
            return Fraction(0)
        lo = beta
    # P(x, beta) as a polynomial in x for this fixed beta
    p = [Fraction(0)] * (v0.n + 1)
    for (i, j), c in v0.profile().items():
        p[i] += c * beta**j
    return _volume_constant(l, d) * _integrate(_mul(_weight(l, d), p), lo, top)


def s_x_direct(l: int, d: int, v0: ValuationModel) -> Fraction:
    """``S_X(v)``: integrate the volume over the triangle ``0 <= alpha <= r x <= r(l-1)``."""
    _check_ld(l, d)
    _check_model(l, v0)
    if v0.kind == "trivial":
        raise ValueError("S is not defined for the trivial valuation")
    # int_0^{r x} P(x, alpha/r) d alpha = r sum c_ij x^{i+j+1} / (j+1)
    inner = [Fraction(0)] * (v0.n + 2)
    for (i, j), c in v0.profile().items():
        inner[i + j + 1] += v0.scale * c / (j + 1)
    total = _volume_constant(l, d) * _integrate(_mul(_weight(l, d), inner), 0, l - 1)
    return total / vol_x(l, d, ValuationModel.for_l("trivial", l), 0)


def s_x_transfer(l: int, d: int, v0: ValuationModel) -> Fraction:
    """``S_X(v) = (l-1)/(ld-1) * S_P(v0)``."""
    _check_ld(l, d)
    _check_model(l, v0)
    return Fraction(l - 1, l * d - 1) * s_p(v0)


def s_x(l: int, d: int, v0: ValuationModel) -> Fraction:
    a, b = s_x_direct(l, d, v0), s_x_transfer(l, d, v0)
    if a != b:
        raise RouteMismatch(f"S_X for {v0}: direct {a} != transfer {b}")
    return a


def beta_integral(a: int, b: int) -> Fraction:
    """``int_0^1 (1-x)^a x^b dx`` by termwise expansion."""
    return sum((Fraction(binomial(a, k) * (-1) ** k, b + k + 1) for k in range(a + 1)), Fraction(0))


def beta_identity(l: int, d: int) -> bool:
    """``(l-1) binom(ld-2, l-1) B(l(d-1), l) = (l-1)/(ld-1)``, both with factorials and by expansion."""
    _check_ld(l, d)
    a, b = l * (d - 1) - 1, l - 1
    by_factorials = Fraction(factorial(a) * factorial(b), factorial(l * d - 1))
    lhs = (l - 1) * binomial(l * d - 2, l - 1) * by_factorials
    return by_factorials == beta_integral(a, b) and lhs == Fraction(l - 1, l * d - 1)


def delta_bound(l: int, d: int) -> Fraction:
    _check_ld(l, d)
    return Fraction(l * d - 1, l - 1)


@dataclass(frozen=True)
class ValuationReport:
    kind: str
    S_p: Fraction | None
    S_x: Fraction | None
    A: Fraction | None
    ratio: Fraction | None
    delta_bound: Fraction
    note: str = ""

    def to_json(self) -> dict:
        def enc(v):
            return None if v is None else str(v)

        out = {k: enc(getattr(self, k)) for k in ("S_p", "S_x", "A", "ratio", "delta_bound")}
        out["kind"] = self.kind
        out["note"] = self.note
        out["ratio_float"] = None if self.ratio is None else float(self.ratio)
        return out


def delta_certificate(l: int, d: int, models: Iterable[ValuationModel | str] = ("hyperplane_order", "point_blowup")) -> list[ValuationReport]:
    """``A_X / S_X`` for each witness valuation, checked against ``(ld-1)/(l-1) > 1``.

    For ``l = 2`` the base is a point and only the bound itself is reported.
    """
    bound = delta_bound(l, d)
    if l == 2:
        return [ValuationReport("bound_only", None, None, None, None, bound, "P^0 carries no divisorial valuations; bound only")]
    out = []
    for m in models:
        v0 = ValuationModel.for_l(m, l) if isinstance(m, str) else m
        sp = s_p(v0)
        sx = s_x(l, d, v0)
        ratio = v0.A / sx
        if ratio != bound * (v0.A / sp):
            raise RouteMismatch(f"ratio {ratio} does not transfer from P^{v0.n}")
        if not (v0.A / sp >= 1 and ratio >= bound > 1):
            raise ArithmeticError(f"{v0.kind}: ratio {ratio} below the bound {bound}")
        out.append(ValuationReport(v0.kind, sp, sx, v0.A, ratio, bound))
    return out
