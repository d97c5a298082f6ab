"""Torus and Hilbert--Mumford stability checks around ``X_{l,d}``.

The torus acting on ``X_{l,d}`` has character lattice ``M_0`` (degree-zero
part of ``M``).  First-order deformations split into one-dimensional weight
spaces indexed by ``Phi``; polystability of a deformation direction is
decided by whether the origin lies in the relative interior of the convex
hull of its weights, which is an exact LP.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .conelattice import LatticeCtx, LatticeVec, enumerate_degree, epsilon, generator
from .exactalg import compositions, exact_rank
from .simplex import solve_lp

__all__ = [
    "WeightSystem",
    "MonomialSupport",
    "WeightSupport",
    "EmptySupportWarning",
    "hm_weight",
    "torus_semistable",
    "polystable_certificate",
    "torus_polystable",
    "t1_classes",
    "t1_weights",
    "t1_dim_oracle",
    "in_sublattice",
    "family_support",
    "family_polystable",
    "append_git_inequality",
    "aut_group_data",
]


class EmptySupportWarning(UserWarning):
    """The zero vector was declared polystable by convention."""


@dataclass(frozen=True)
class WeightSystem:
    w: tuple[Fraction, ...]

    def __init__(self, w: Iterable):
        object.__setattr__(self, "w", tuple(Fraction(x) for x in w))

    def __len__(self) -> int:
        return len(self.w)

    @property
    def total(self) -> Fraction:
        return sum(self.w, Fraction(0))


@dataclass(frozen=True)
class MonomialSupport:
    """Exponent vectors of the monomials occurring with nonzero coefficient."""

    exponents: frozenset

    def __init__(self, exponents: Iterable[Sequence[int]]):
        ex = frozenset(tuple(int(a) for a in e) for e in exponents)
        if any(a < 0 for e in ex for a in e):
            raise ValueError("negative exponent")
        if len({len(e) for e in ex}) > 1 or len({sum(e) for e in ex}) > 1:
            raise ValueError("exponents must share the number of variables and the degree")
        object.__setattr__(self, "exponents", ex)

    @property
    def degree(self) -> int | None:
        return sum(next(iter(self.exponents))) if self.exponents else None


@dataclass(frozen=True)
class WeightSupport:
    """Integer weight vectors with multiplicities; only the distinct vectors matter for stability."""

    vectors: tuple[tuple[int, ...], ...]
    multiplicities: tuple[int, ...] = field(default=())

    def __init__(self, vectors: Iterable[Sequence[int]], multiplicities: Iterable[int] | None = None):
        vecs = [tuple(int(a) for a in v) for v in vectors]
        mult = list(multiplicities) if multiplicities is not None else [1] * len(vecs)
        if len(mult) != len(vecs) or any(k < 1 for k in mult):
            raise ValueError("bad multiplicities")
        if len({len(v) for v in vecs}) > 1:
            raise ValueError("weights of different lengths")
        merged: dict[tuple[int, ...], int] = {}
        for v, k in zip(vecs, mult):
            merged[v] = merged.get(v, 0) + k
        keys = sorted(merged)
        object.__setattr__(self, "vectors", tuple(keys))
        object.__setattr__(self, "multiplicities", tuple(merged[v] for v in keys))

    def __len__(self) -> int:
        return len(self.vectors)

    def rank(self) -> int:
        return exact_rank(self.vectors)

    def total(self) -> tuple[int, ...]:
        if not self.vectors:
            return ()
        return tuple(sum(col) for col in zip(*self.vectors))


def hm_weight(s: MonomialSupport, w: WeightSystem) -> Fraction:
    """``min <w, alpha>`` over the support."""
    if not s.exponents:
        raise ValueError("empty support has no weight")
    n = len(next(iter(s.exponents)))
    if n != len(w):
        raise ValueError(f"{len(w)} weights for {n} variables")
    return min(sum((wi * a for wi, a in zip(w.w, e)), Fraction(0)) for e in s.exponents)


def torus_semistable(support: WeightSupport) -> bool:
    """The origin lies in the convex hull of the weights."""
    if not support.vectors:
        return True
    vecs = support.vectors
    A = [list(col) for col in zip(*vecs)] + [[1] * len(vecs)]
    b = [0] * len(vecs[0]) + [1]
    return solve_lp(A, b, [0] * len(vecs)).status == "optimal"


def polystable_certificate(support: WeightSupport) -> tuple[bool, dict[tuple[int, ...], Fraction]]:
    """Verdict plus strictly positive convex weights ``lambda`` with ``sum lambda_u u = 0``.

    Such weights exist iff, after rescaling, some ``lambda >= 1`` works; writing
    ``lambda = 1 + mu`` leaves the feasibility problem
    ``sum mu_u u = -sum u, mu >= 0`` with one row per coordinate.  Maximising
    ``min lambda`` over the simplex gives the same verdict: a feasible ``mu``
    yields the margin ``1 / sum(1 + mu)``.
    """
    if not support.vectors:
        warnings.warn("empty weight support: the zero vector is polystable by convention", EmptySupportWarning, stacklevel=2)
        return True, {}
    vecs = support.vectors
    A = [list(col) for col in zip(*vecs)]
    b = [-sum(col) for col in A]
    res = solve_lp(A, b, [0] * len(vecs))
    if res.status != "optimal":
        return False, {}
    lam = [1 + mu for mu in res.x]
    total = sum(lam)
    return True, {v: x / total for v, x in zip(vecs, lam)}


def torus_polystable(support: WeightSupport) -> bool:
    return polystable_certificate(support)[0]


def _degree_zero_coords(u: LatticeVec) -> tuple[int, ...]:
    return u.coords()[:-1]


def t1_classes(l: int, d: int, cap: int | None = None) -> list[LatticeVec]:
    """``Phi``: weights ``[b] - eps`` of degree-``d`` monomials, minus every ``e_ij - e_i'j'``."""
    ctx = LatticeCtx(l, d)
    eps = epsilon(ctx)
    psi = {u - eps for u in enumerate_degree(ctx, d, cap)}
    gens = [generator(ctx, i, j) for i in range(l) for j in range(d)]
    excluded = {g - h for g in gens for h in gens}
    return sorted(psi - excluded, key=lambda u: u.rep)


def t1_weights(l: int, d: int, cap: int | None = None) -> WeightSupport:
    """``Phi`` in integer coordinates on ``M_0`` (in-row differences ``a_ij - a_i1``)."""
    return WeightSupport([_degree_zero_coords(u) for u in t1_classes(l, d, cap)])


def t1_dim_oracle(l: int, d: int) -> int:
    """``dim C[x]_d`` minus the number of distinct monomials ``x^{eps_i - e_ij + e_i'j'}``."""
    if l < 1 or d < 2:
        raise ValueError(f"need l >= 1 and d >= 2, got l={l}, d={d}")
    n = l * d
    total = sum(1 for _ in compositions(d, n))
    relations = set()
    for i, j, i2, j2 in product(range(l), range(d), range(l), range(d)):
        e = [0] * n
        for k in range(d):
            e[i * d + k] += 1
        e[i * d + j] -= 1
        e[i2 * d + j2] += 1
        relations.add(tuple(e))
    return total - len(relations)


def in_sublattice(u: LatticeVec, t: int) -> bool:
    """``u`` lies in the span of ``e_ij`` with ``i <= t``: rows past ``t`` are constant."""
    return all(len(set(r)) == 1 for r in u.rep[t:])


def family_support(l: int, d: int, t: int, cap: int | None = None) -> list[LatticeVec]:
    """``Phi`` intersected with the span of the first ``t`` blocks."""
    if not 1 <= t <= l:
        raise ValueError(f"need 1 <= t <= l, got t={t}")
    return [u for u in t1_classes(l, d, cap) if in_sublattice(u, t)]


def family_polystable(l: int, d: int, t: int, cap: int | None = None) -> bool:
    """Torus polystability of a general deformation of the first ``t`` blocks."""
    support = WeightSupport([_degree_zero_coords(u) for u in family_support(l, d, t, cap)])
    return torus_polystable(support)


def append_git_inequality(w: WeightSystem, v: WeightSystem, m: int, d: int) -> tuple[Fraction, Fraction, bool]:
    """``min(sum w, d/(m+2) sum v) <= d/(m+d+2) (sum w + sum v)``; returns ``(lhs, rhs, tight)``.

    The right side is the mean of the two terms weighted by ``d`` and ``m+2``.
    """
    if m < 0 or d < 1:
        raise ValueError(f"need m >= 0 and d >= 1, got m={m}, d={d}")
    if len(w) != d:
        raise ValueError(f"expected {d} weights on the appended block, got {len(w)}")
    if len(v) != m + 2:
        raise ValueError(f"expected {m + 2} weights on the base, got {len(v)}")
    a = w.total
    bound = Fraction(d, m + 2) * v.total
    lhs = min(a, bound)
    rhs = Fraction(d, m + d + 2) * (a + v.total)
    return lhs, rhs, lhs == rhs


def aut_group_data(l: int, d: int) -> tuple[int, int]:
    """``(|S_d^l x| S_l|, rank of the torus modulo scalars)``."""
    if l < 1 or d < 2:
        raise ValueError(f"need l >= 1 and d >= 2, got l={l}, d={d}")
    return math.factorial(d) ** l * math.factorial(l), l * (d - 1)
