"""The lattice ``M = Z^{ld} / L`` graded by degree, the cone spanned by the
coordinate vectors ``e_ij``, and the row-minimum function ``phi``.

``L`` is spanned by the differences ``eps_1 - eps_i`` of the row vectors
``eps_i = e_i1 + ... + e_id``; they all have the same image ``eps`` in ``M``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Iterator, Sequence

from .exactalg import binomial, compositions

__all__ = [
    "DEFAULT_ENUM_CAP",
    "ENUM_CAP_ENV",
    "EnumerationCapExceeded",
    "LatticeCtx",
    "LatticeVec",
    "Facet",
    "canonicalize",
    "generator",
    "epsilon",
    "phi",
    "in_cone",
    "decompose",
    "reconstruct",
    "enumerate_degree",
    "count_degree",
    "count_by_phi",
    "leading_count",
    "count_residual",
    "gamma_dim",
    "hilbert_function",
    "hilbert_crosscheck",
    "facets",
]

DEFAULT_ENUM_CAP = 10**7
ENUM_CAP_ENV = "XLD_ENUM_CAP"


class EnumerationCapExceeded(RuntimeError):
    def __init__(self, needed: int, cap: int):
        super().__init__(f"enumeration would produce {needed} points, above the cap {cap} (set {ENUM_CAP_ENV} to raise it)")
        self.needed = needed
        self.cap = cap


def resolve_cap(cap: int | None = None) -> int:
    if cap is not None:
        return int(cap)
    env = os.environ.get(ENUM_CAP_ENV)
    return int(env) if env else DEFAULT_ENUM_CAP


@dataclass(frozen=True)
class LatticeCtx:
    l: int
    d: int

    def __post_init__(self):
        if self.l < 1 or self.d < 2:
            raise ValueError(f"need l >= 1 and d >= 2, got l={self.l}, d={self.d}")

    @property
    def rank(self) -> int:
        return self.l * self.d - self.l + 1

    def zero(self) -> "LatticeVec":
        return LatticeVec(tuple((0,) * self.d for _ in range(self.l)), self)


@dataclass(frozen=True)
class LatticeVec:
    """A class in ``M``, always held by its canonical representative.

    Build instances with :func:`canonicalize`; the constructor trusts ``rep``.
    """

    rep: tuple[tuple[int, ...], ...]
    ctx: LatticeCtx

    @property
    def deg(self) -> int:
        return sum(map(sum, self.rep))

    @property
    def phi(self) -> int:
        return sum(map(min, self.rep))

    def coords(self) -> tuple[int, ...]:
        """Injective linear coordinates on ``M``: in-row differences ``a_ij - a_i1`` and the degree."""
        return tuple(r[j] - r[0] for r in self.rep for j in range(1, self.ctx.d)) + (self.deg,)

    def _check(self, other: "LatticeVec") -> None:
        if other.ctx != self.ctx:
            raise ValueError("lattice vectors from different contexts")

    def __add__(self, other: "LatticeVec") -> "LatticeVec":
        self._check(other)
        return canonicalize([[a + b for a, b in zip(r, s)] for r, s in zip(self.rep, other.rep)], self.ctx)

    def __neg__(self) -> "LatticeVec":
        return canonicalize([[-a for a in r] for r in self.rep], self.ctx)

    def __sub__(self, other: "LatticeVec") -> "LatticeVec":
        return self + (-other)

    def __mul__(self, k: int) -> "LatticeVec":
        return canonicalize([[k * a for a in r] for r in self.rep], self.ctx)

    __rmul__ = __mul__


def canonicalize(raw: Sequence[Sequence[int]], ctx: LatticeCtx) -> LatticeVec:
    """Representative whose rows ``2..l`` have sums in ``[0, d-1]``; row 1 absorbs the rest."""
    rows = [list(map(int, r)) for r in raw]
    if len(rows) != ctx.l or any(len(r) != ctx.d for r in rows):
        raise ValueError(f"expected a {ctx.l}x{ctx.d} matrix")
    for i in range(1, ctx.l):
        k = sum(rows[i]) // ctx.d  # floor division also handles negative sums
        if k:
            rows[i] = [a - k for a in rows[i]]
            rows[0] = [a + k for a in rows[0]]
    return LatticeVec(tuple(map(tuple, rows)), ctx)


def generator(ctx: LatticeCtx, i: int, j: int) -> LatticeVec:
    """Image of ``e_ij`` (0-based indices)."""
    raw = [[0] * ctx.d for _ in range(ctx.l)]
    raw[i][j] = 1
    return canonicalize(raw, ctx)


def epsilon(ctx: LatticeCtx) -> LatticeVec:
    raw = [[0] * ctx.d for _ in range(ctx.l)]
    raw[0] = [1] * ctx.d
    return canonicalize(raw, ctx)


def phi(u: LatticeVec) -> int:
    return u.phi


def in_cone(u: LatticeVec) -> bool:
    # a nonnegative representative exists iff the row minima can be balanced out
    return u.phi >= 0


def decompose(u: LatticeVec) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """``(c, b)`` with ``u = c * eps + sum b_ij e_ij``, ``b >= 0`` and every row of ``b`` hitting 0."""
    if not in_cone(u):
        raise ValueError(f"{u.rep} lies outside the cone (phi = {u.phi})")
    b = tuple(tuple(a - min(r) for a in r) for r in u.rep)
    return u.phi, b


def reconstruct(c: int, b: Sequence[Sequence[int]], ctx: LatticeCtx) -> LatticeVec:
    return epsilon(ctx) * c + canonicalize(b, ctx)


@lru_cache(maxsize=None)
def _rows_min_zero(s: int, d: int) -> tuple[tuple[int, ...], ...]:
    return tuple(r for r in compositions(s, d) if min(r) == 0)


def _row_count(s: int, d: int) -> int:
    """Length-``d`` nonnegative rows with sum ``s`` and some zero entry."""
    if s == 0:
        return 1
    return binomial(s + d - 1, d - 1) - binomial(s - 1, d - 1)


@lru_cache(maxsize=None)
def _min_zero_counts(l: int, d: int, top: int) -> tuple[int, ...]:
    """Number of ``l x d`` nonnegative matrices with row minima 0, by total ``0..top``."""
    row = [_row_count(s, d) for s in range(top + 1)]
    acc = [1] + [0] * top
    for _ in range(l):
        nxt = [0] * (top + 1)
        for a, x in enumerate(acc):
            if x:
                for s in range(top + 1 - a):
                    nxt[a + s] += x * row[s]
        acc = nxt
    return tuple(acc)


def count_degree(ctx: LatticeCtx, k: int) -> int:
    """Number of cone points of degree ``k``, without listing them."""
    if k < 0:
        return 0
    counts = _min_zero_counts(ctx.l, ctx.d, k)
    return sum(counts[k - c * ctx.d] for c in range(k // ctx.d + 1))


def _matrices(ctx: LatticeCtx, total: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    for sums in compositions(total, ctx.l):
        yield from product(*(_rows_min_zero(s, ctx.d) for s in sums))


def enumerate_degree(ctx: LatticeCtx, k: int, cap: int | None = None) -> list[LatticeVec]:
    """Every cone point of degree ``k``, each exactly once, via ``c * eps + b``."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    cap = resolve_cap(cap)
    need = count_degree(ctx, k)
    if need > cap:
        raise EnumerationCapExceeded(need, cap)
    eps_rows = epsilon(ctx).rep
    out = []
    for c in range(k // ctx.d + 1):
        for b in _matrices(ctx, k - c * ctx.d):
            raw = [[c * e + x for e, x in zip(er, br)] for er, br in zip(eps_rows, b)]
            out.append(canonicalize(raw, ctx))
    return out


def count_by_phi(ctx: LatticeCtx, N: int) -> list[int]:
    """``N_m`` for ``m = 0 .. (l-1)N``: points of degree ``N d (l-1)`` with ``phi = m``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    k = N * ctx.d * (ctx.l - 1)
    counts = _min_zero_counts(ctx.l, ctx.d, k)
    return [counts[k - m * ctx.d] for m in range((ctx.l - 1) * N + 1)]


def leading_count(ctx: LatticeCtx, N: int, m: int):
    """Leading-order model ``d^{ld-1} (N(l-1) - m)^{l(d-1)-1} / (l(d-1)-1)!`` of ``N_m``."""
    e = ctx.l * (ctx.d - 1) - 1
    return Fraction(ctx.d ** (ctx.l * ctx.d - 1) * (N * (ctx.l - 1) - m) ** e, factorial(e))


def count_residual(ctx: LatticeCtx, N: int):
    """``max_m |N_m - leading_count|``."""
    return max(abs(n - leading_count(ctx, N, m)) for m, n in enumerate(count_by_phi(ctx, N)))


def gamma_dim(phi_value: int, l: int) -> int:
    """Dimension of the graded piece attached to a point with the given ``phi``."""
    if l == 1:
        return 1 if phi_value == 0 else 0
    return binomial(phi_value + l - 2, l - 2)


def hilbert_function(l: int, d: int, k: int) -> int:
    """``dim`` of degree ``k`` in ``C[x_ij] / (sum of block products)``."""
    n = l * d - 1
    top = binomial(n + k, n)
    return top - (binomial(n + k - d, n) if k >= d else 0)


def hilbert_crosscheck(ctx: LatticeCtx, k: int, cap: int | None = None) -> bool:
    lhs = sum(gamma_dim(u.phi, ctx.l) for u in enumerate_degree(ctx, k, cap))
    return lhs == hilbert_function(ctx.l, ctx.d, k)


@dataclass(frozen=True)
class Facet:
    """``phi_j(a) = a_{1 j_1} + ... + a_{l j_l}`` for a column choice ``j`` (0-based)."""

    j: tuple[int, ...]

    def __call__(self, u: LatticeVec) -> int:
        return sum(r[c] for r, c in zip(u.rep, self.j))

    def zero_generators(self, ctx: LatticeCtx) -> list[tuple[int, int]]:
        return [(i, c) for i in range(ctx.l) for c in range(ctx.d) if c != self.j[i]]


def facets(ctx: LatticeCtx) -> list[Facet]:
    return [Facet(j) for j in product(range(ctx.d), repeat=ctx.l)]
