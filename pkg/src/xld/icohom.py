"""Intersection cohomology of ``X_{l,d}``.

Two routes produce the intersection Betti series:

* :func:`ih_series` -- the closed formula, a sum over block-size profiles
  ``nu`` of sign-laden truncated series ``g_nu``;
* :func:`ih_oracle` -- the alternating sum of singular cohomology plus the
  class of the defect object, the latter summed stratum by stratum with
  primitive dimensions read off explicit matrices.

Purity (odd intersection cohomology vanishes, everything is Hodge--Tate) is
what lets the alternating sum be read as a Betti series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .exactalg import MHSClass, TruncPoly, binomial, bounded_compositions, compositions, exact_rank, multinomial
from .hodgecomb import euler_class, xld_cohomology

__all__ = [
    "VtTable",
    "NuProfile",
    "PurityError",
    "vt_dims",
    "vt_prim_dims",
    "vt_prim_dims_oracle",
    "vt_table",
    "nu_profiles",
    "g_nu",
    "defect_class",
    "defect_class_by_strata",
    "ih_series",
    "ih_oracle",
    "is_unimodal",
]

VT_SIZE_CAP = 24


class PurityError(ArithmeticError):
    """The alternating-sum class has a negative coefficient, so it cannot be a Betti series."""


def _check_t(t: Sequence[int]) -> tuple[int, ...]:
    t = tuple(int(x) for x in t)
    if not t or any(x < 2 for x in t):
        raise ValueError(f"block sizes must be >= 2, got {t}")
    return t


@dataclass(frozen=True)
class VtTable:
    t: tuple[int, ...]
    dims: tuple[int, ...]
    prim_dims: tuple[int, ...]

    @property
    def top(self) -> int:
        """Largest index ``m = |t| - 2l``."""
        return sum(self.t) - 2 * len(self.t)


@dataclass(frozen=True)
class NuProfile:
    """Counts ``(nu_2, ..., nu_d)`` of blocks of each size."""

    nu: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "nu", tuple(int(x) for x in self.nu))
        if any(x < 0 for x in self.nu):
            raise ValueError(f"negative entry in {self.nu}")

    @property
    def d(self) -> int:
        return len(self.nu) + 1

    @property
    def l(self) -> int:
        return sum(self.nu)

    @property
    def norm(self) -> int:
        return sum(k * n for k, n in enumerate(self.nu, start=2))

    def block_sizes(self) -> tuple[int, ...]:
        """A representative ``t`` with sizes sorted increasingly."""
        return tuple(k for k, n in enumerate(self.nu, start=2) for _ in range(n))


def vt_dims(t: Sequence[int]) -> list[int]:
    t = _check_t(t)
    p = TruncPoly([1])
    for ti in t:
        p = p * TruncPoly.geometric(ti - 1)
    return p.to_list(sum(t) - 2 * len(t) + 1)


def _prim_length(t: tuple[int, ...]) -> int:
    return sum(t) // 2 - len(t) + 1


def vt_prim_dims(t: Sequence[int]) -> list[int]:
    """``dim V_{t,prim}^{(m)}`` for ``m = 0 .. floor(|t|/2) - l`` from the truncated product.

    Higher ``m`` have no primitive part.
    """
    t = _check_t(t)
    l = len(t)
    p = TruncPoly([1, -1])
    for ti in t:
        p = p * TruncPoly.geometric(ti - 1)
    cut = p.truncate(Fraction(sum(t), 2) - l + 1)
    return cut.to_list(max(_prim_length(t), len(cut)))


def _vt_basis(t: tuple[int, ...], m: int) -> list[tuple[int, ...]]:
    if m < 0:
        return []
    return list(bounded_compositions(m, [ti - 2 for ti in t]))


@lru_cache(maxsize=None)
def _prim_oracle_sorted(t: tuple[int, ...]) -> tuple[int, ...]:
    top = sum(t) - 2 * len(t)
    out = []
    lower = _vt_basis(t, -1)
    for m in range(top + 1):
        basis = _vt_basis(t, m)
        if not lower:
            out.append(len(basis))
        else:
            index = {b: j for j, b in enumerate(lower)}
            rows = []
            for b in basis:
                row = [0] * len(lower)
                for i, mi in enumerate(b):
                    if mi >= 1:
                        row[index[b[:i] + (mi - 1,) + b[i + 1 :]]] += 1
                rows.append(row)
            out.append(len(basis) - exact_rank(rows))
        lower = basis
    return tuple(out)


def vt_prim_dims_oracle(t: Sequence[int], cap: int = VT_SIZE_CAP) -> list[int]:
    """Kernel dimensions of ``V_t^{(m)} -> V_t^{(m-1)}``, from the explicit matrix.

    The basis of ``V_t^{(m)}`` is indexed by ``(m_1, ..., m_l)`` with
    ``0 <= m_i <= t_i - 2`` summing to ``m``; the map lowers one index at a
    time with coefficient 1.
    """
    t = _check_t(t)
    if sum(t) > cap:
        raise ValueError(f"|t| = {sum(t)} exceeds the cap {cap}")
    # the map is symmetric under permuting blocks, so the kernel dimensions are too
    full = list(_prim_oracle_sorted(tuple(sorted(t))))
    # drop the zero tail past the middle, but keep anything nonzero so mismatches surface
    keep = _prim_length(t)
    while len(full) > keep and full[-1] == 0:
        full.pop()
    return full


def vt_table(t: Sequence[int]) -> VtTable:
    t = _check_t(t)
    return VtTable(t, tuple(vt_dims(t)), tuple(vt_prim_dims(t)))


def nu_profiles(l: int, d: int) -> Iterator[NuProfile]:
    """Profiles with ``sum nu_k = l`` and ``nu_d != l``."""
    if l < 1 or d < 2:
        raise ValueError(f"need l >= 1 and d >= 2, got l={l}, d={d}")
    for nu in compositions(l, d - 1):
        if nu[-1] != l:
            yield NuProfile(nu)


def _check_profile(nu: NuProfile, l: int, d: int) -> None:
    if nu.d != d or nu.l != l:
        raise ValueError(f"profile {nu.nu} does not fit (l, d) = ({l}, {d})")
    if nu.nu[-1] == l:
        raise ValueError("the profile with every block of size d is excluded")


def g_nu(nu: NuProfile | Sequence[int], l: int, d: int) -> TruncPoly:
    if not isinstance(nu, NuProfile):
        nu = NuProfile(tuple(nu))
    _check_profile(nu, l, d)
    n = nu.norm
    inner = TruncPoly([1, -1]).shift(l - 1)
    for k, nk in enumerate(nu.nu, start=2):
        inner = inner * TruncPoly.geometric(k - 1) ** nk
    g = TruncPoly.geometric(l * d - n) * inner.truncate(Fraction(n, 2))
    return -g if n % 2 else g


def _profile_weight(nu: NuProfile, d: int) -> int:
    w = multinomial(nu.l, nu.nu)
    for k, nk in enumerate(nu.nu, start=2):
        w *= binomial(d, k) ** nk
    return w


def defect_class(l: int, d: int) -> MHSClass:
    """``(-1)^{ld-1} sum_i (-1)^i [H^i a_* K_X]`` as a polynomial in ``u``."""
    total = TruncPoly()
    for nu in nu_profiles(l, d):
        total = total + _profile_weight(nu, d) * g_nu(nu, l, d)
    return MHSClass.from_poly(total)


def defect_class_by_strata(l: int, d: int) -> MHSClass:
    """Same class, summed over every stratum ``t`` and subspace choice separately.

    Stratum ``t`` (``t != (d, ..., d)``) carries ``prod binom(d, t_i)``
    linear subspaces of dimension ``ld - |t|``; each contributes
    ``(-1)^{|t|} u^{m+l-1} [P^{ld-|t|-1}]`` per primitive vector in degree ``m``.
    """
    if l < 1 or d < 2:
        raise ValueError(f"need l >= 1 and d >= 2, got l={l}, d={d}")
    total = MHSClass()
    for t in product(range(2, d + 1), repeat=l):
        if all(ti == d for ti in t):
            continue
        n = sum(t)
        count = math.prod(binomial(d, ti) for ti in t)
        sign = -1 if n % 2 else 1
        proj = MHSClass.from_poly(TruncPoly.geometric(l * d - n))
        for m, dim in enumerate(vt_prim_dims_oracle(t, cap=max(VT_SIZE_CAP, n))):
            if dim:
                total = total + proj.twist(m + l - 1) * (sign * count * dim)
    return total


def ih_series(l: int, d: int) -> TruncPoly:
    """Closed formula for ``sum_i dim IH^{2i}(X_{l,d}) q^i``."""
    if l < 1 or d < 2:
        raise ValueError(f"need l >= 1 and d >= 2, got l={l}, d={d}")
    block = TruncPoly.monomial(d - 1) - TruncPoly([-1, 1]) ** (d - 1)
    out = TruncPoly.geometric(l * d - 1) + (block**l).shift(l - 1)
    for nu in nu_profiles(l, d):
        out = out + _profile_weight(nu, d) * g_nu(nu, l, d)
    return out


def ih_oracle(l: int, d: int) -> TruncPoly:
    """Defect class plus the Euler class of singular cohomology, read as a Betti series."""
    cls = defect_class_by_strata(l, d) + euler_class(xld_cohomology(l, d), include_hyperplane=True)
    poly = cls.to_poly()
    if any(c < 0 for c in poly.coeffs):
        raise PurityError(f"negative coefficient in IH class of X_({l},{d}): {poly}")
    return poly


def is_unimodal(p: TruncPoly) -> bool:
    """Coefficients weakly increase up to the middle (hard Lefschetz shape)."""
    c = p.coeffs
    half = (len(c) - 1) // 2
    return all(c[i] <= c[i + 1] for i in range(half))
