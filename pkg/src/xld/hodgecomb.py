"""Singular cohomology of hypersurfaces modulo hyperplane classes, and the
Hodge--Du Bois diamonds assembled from it.

Everything is bookkept as multiplicities of pure Hodge structures.  The
internal model only stores ``Hbar`` (cohomology modulo powers of the
hyperplane class); the hyperplane powers ``Q(-k)`` in degree ``2k`` are
added back when a diamond or an Euler class is formed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

from .exactalg import MHSClass, TruncPoly, binomial

__all__ = [
    "PureSummand",
    "GradedMHS",
    "HodgeDiamond",
    "multiplicities",
    "smooth_primitive_hodge",
    "smooth_hypersurface",
    "append_blocks",
    "xld_cohomology",
    "assemble_diamond",
    "euler_class",
]


def _check_ld(l: int, d: int) -> None:
    if not (isinstance(l, int) and isinstance(d, int)) or l < 1 or d < 2:
        raise ValueError(f"need integers l >= 1 and d >= 2, got l={l!r}, d={d!r}")


@dataclass(frozen=True)
class PureSummand:
    """A pure Hodge structure recorded by its Hodge numbers ``(p, q) -> h``."""

    hodge: tuple = ()

    def __post_init__(self):
        clean = {}
        for (p, q), h in dict(self.hodge).items():
            if h < 0:
                raise ValueError(f"negative Hodge number h^{p},{q} = {h}")
            if h:
                clean[(int(p), int(q))] = int(h)
        if len({p + q for p, q in clean}) > 1:
            raise ValueError(f"summand is not pure: {clean}")
        object.__setattr__(self, "hodge", tuple(sorted(clean.items())))

    @classmethod
    def tate(cls, k: int, mult: int = 1) -> "PureSummand":
        return cls({(k, k): mult})

    @property
    def table(self) -> dict[tuple[int, int], int]:
        return dict(self.hodge)

    @property
    def weight(self) -> int | None:
        return self.hodge[0][0][0] + self.hodge[0][0][1] if self.hodge else None

    @property
    def dim(self) -> int:
        return sum(h for _, h in self.hodge)

    def is_tate(self) -> bool:
        return all(p == q for (p, q), _ in self.hodge)

    def twist(self, k: int) -> "PureSummand":
        """Tate twist ``(-k)``: shifts every ``(p, q)`` to ``(p + k, q + k)``."""
        return PureSummand({(p + k, q + k): h for (p, q), h in self.hodge})

    def is_symmetric(self) -> bool:
        t = self.table
        return all(t.get((q, p), 0) == h for (p, q), h in t.items())


@dataclass
class GradedMHS:
    """``Hbar^k`` for each degree ``k``, as a multiset of pure summands."""

    dim_X: int
    entries: dict[int, Counter] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim_X < 0:
            raise ValueError("negative dimension")
        entries, self.entries = self.entries, {}
        for k, summands in entries.items():
            items = summands.items() if isinstance(summands, Mapping) else ((s, 1) for s in summands)
            for s, c in items:
                self.add(k, s, c)

    def add(self, k: int, summand: PureSummand, count: int = 1) -> None:
        if not 0 <= k <= 2 * self.dim_X:
            raise ValueError(f"degree {k} outside [0, {2 * self.dim_X}]")
        if count < 0:
            raise ValueError("negative multiplicity")
        if count == 0 or summand.dim == 0:
            return
        self.entries.setdefault(k, Counter())[summand] += count

    def degrees(self) -> list[int]:
        return sorted(k for k, c in self.entries.items() if c)

    def summands(self, k: int) -> Counter:
        return Counter(self.entries.get(k, {}))

    def hodge_numbers(self, k: int) -> dict[tuple[int, int], int]:
        """Total Hodge numbers of ``Hbar^k``, summed over summands."""
        out: Counter = Counter()
        for s, c in self.entries.get(k, {}).items():
            for pq, h in s.hodge:
                out[pq] += c * h
        return dict(out)

    def betti(self, k: int) -> int:
        return sum(self.hodge_numbers(k).values())

    def is_hodge_tate(self) -> bool:
        return all(s.is_tate() for c in self.entries.values() for s in c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMHS):
            return NotImplemented
        return self.dim_X == other.dim_X and {k: self.summands(k) for k in self.degrees()} == {
            k: other.summands(k) for k in other.degrees()
        }


@dataclass(frozen=True)
class HodgeDiamond:
    """Hodge--Du Bois numbers ``h^{p,q} = dim gr_F^p H^{p+q}``."""

    dim: int
    table: tuple = ()

    def __post_init__(self):
        t = dict(self.table)
        for (p, q), h in t.items():
            if not (0 <= p <= self.dim and 0 <= q <= self.dim):
                if h:
                    raise ValueError(f"h^{p},{q} outside the diamond")
        object.__setattr__(self, "table", tuple(sorted((k, v) for k, v in t.items() if v)))

    def __getitem__(self, pq: tuple[int, int]) -> int:
        return dict(self.table).get(pq, 0)

    def row(self, k: int) -> list[int]:
        """Degree-``k`` row, ordered ``h^{p, k-p}`` with ``p`` decreasing."""
        n = self.dim
        t = dict(self.table)
        return [t.get((p, k - p), 0) for p in range(min(k, n), max(0, k - n) - 1, -1)]

    def rows(self) -> list[list[int]]:
        return [self.row(k) for k in range(2 * self.dim + 1)]

    def betti(self, k: int) -> int:
        return sum(self.row(k))

    def to_json(self) -> dict:
        return {"dim": self.dim, "rows": self.rows()}

    def pretty(self) -> str:
        """Centered rows, top degree first."""
        rows = [[str(h) for h in self.row(k)] for k in range(2 * self.dim, -1, -1)]
        w = max(len(s) for r in rows for s in r)
        lines = [(" " * (w + 1)).join(s.center(w) for s in r) for r in rows]
        width = max(len(x) for x in lines)
        return "\n".join(x.center(width).rstrip() for x in lines)


def multiplicities(l: int, d: int) -> list[int]:
    """Coefficients of ``((1 + q)**(d-1) - q**(d-1))**l``, i.e. ``a_0 .. a_{l(d-2)}``."""
    _check_ld(l, d)
    block = TruncPoly([binomial(d - 1, i) for i in range(d - 1)])
    return (block**l).to_list(l * (d - 2) + 1)


def smooth_primitive_hodge(n: int, d: int) -> PureSummand:
    """Primitive middle Hodge numbers of a smooth degree-``d`` hypersurface of dimension ``n``.

    Uses the Jacobian ring: ``h^{n-q,q}_prim`` is the coefficient of
    ``t**((q+1)d - n - 2)`` in ``((1 - t**(d-1)) / (1 - t))**(n+2)``.
    """
    if n < 1 or d < 2:
        raise ValueError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    jac = TruncPoly.geometric(d - 1) ** (n + 2)
    table = {}
    for q in range(n + 1):
        e = (q + 1) * d - n - 2
        if e >= 0:
            table[(n - q, q)] = jac[e]
    return PureSummand(table)


def smooth_hypersurface(n: int, d: int) -> GradedMHS:
    return GradedMHS(n, {n: [smooth_primitive_hodge(n, d)]})


def append_blocks(xbar: GradedMHS, m: int, l: int, d: int) -> GradedMHS:
    """``Hbar`` of ``Y = {f(x) + y_11...y_1d + ... + y_l1...y_ld = 0}`` from ``Hbar`` of ``X = {f = 0}``.

    ``X`` is an ``m``-dimensional degree-``d`` hypersurface.  Each summand of
    ``Hbar^{m+i0}(X)`` contributes ``a_k`` copies of its twist by ``-(l+k)``
    to ``Hbar^{m+ld+i0+k}(Y)``.
    """
    _check_ld(l, d)
    if xbar.dim_X != m:
        raise ValueError(f"xbar has dimension {xbar.dim_X}, expected m={m}")
    a = multiplicities(l, d)
    out = GradedMHS(m + l * d)
    for deg in xbar.degrees():
        i0 = deg - m
        if i0 < 0:
            # Lefschetz: Hbar vanishes below the middle degree of a hypersurface
            raise ValueError(f"Hbar^{deg} of an {m}-dimensional hypersurface must vanish")
        for s, c in xbar.entries[deg].items():
            for k, ak in enumerate(a):
                out.add(m + l * d + i0 + k, s.twist(l + k), c * ak)
    return out


def xld_cohomology(l: int, d: int) -> GradedMHS:
    """``Hbar^{ld-2+i}(X_{l,d}) = Q(-(l-1+i))^{a_i}``; nothing below the middle."""
    _check_ld(l, d)
    dim = l * d - 2
    out = GradedMHS(dim)
    for i, ai in enumerate(multiplicities(l, d)):
        out.add(dim + i, PureSummand.tate(l - 1 + i), ai)
    return out


def assemble_diamond(gmhs: GradedMHS) -> HodgeDiamond:
    n = gmhs.dim_X
    for k in gmhs.degrees():
        if k < n:
            raise ValueError(f"degree {k} is below the middle degree {n}")
    table: Counter = Counter()
    for k in range(0, n, 2):
        table[(k // 2, k // 2)] += 1
    for k in range(n, 2 * n + 1):
        if k % 2 == 0:
            table[(k // 2, k // 2)] += 1  # h^{k/2}
        for (p, q), h in gmhs.hodge_numbers(k).items():
            table[(p, k - p)] += h
    return HodgeDiamond(n, dict(table))


def euler_class(gmhs: GradedMHS, include_hyperplane: bool = True) -> MHSClass:
    """``sum_k (-1)^k [H^k]`` in ``Z[u, 1/u]``; Hodge--Tate input only."""
    total = MHSClass()
    for k in gmhs.degrees():
        sign = -1 if k % 2 else 1
        for s, c in gmhs.entries[k].items():
            if not s.is_tate():
                raise ValueError(f"summand {s.table} in degree {k} is not of Hodge-Tate type")
            for (p, _), h in s.hodge:
                total = total + MHSClass.tate(p, sign * c * h)
    if include_hyperplane:
        total = total + MHSClass({j: 1 for j in range(gmhs.dim_X + 1)})
    return total
