"""Exact arithmetic substrate: binomials, truncated integer polynomials and
Laurent classes in the Tate symbol ``u``.

Nothing in here touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

__all__ = [
    "TruncPoly",
    "MHSClass",
    "poly_mul",
    "poly_truncate",
    "binomial",
    "multinomial",
    "compositions",
    "bounded_compositions",
    "exact_rank",
]


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class TruncPoly:
    """Integer polynomial in one variable ``q``, stored densely.

    Coefficients are indexed by exponent; trailing zeros are never stored, so
    the zero polynomial has an empty coefficient tuple and degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _strip(coeffs)
        for a in c:
            if not isinstance(a, int):
                raise TypeError(f"coefficient {a!r} is not an integer")
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("TruncPoly is immutable")

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "TruncPoly":
        if k < 0:
            raise ValueError("negative exponent")
        return cls([0] * k + [c])

    @classmethod
    def geometric(cls, n: int) -> "TruncPoly":
        """``(q**n - 1)/(q - 1) = 1 + q + ... + q**(n-1)``; zero for ``n == 0``."""
        if n < 0:
            raise ValueError("geometric series needs n >= 0")
        return cls([1] * n)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = TruncPoly([other])
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("TruncPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"TruncPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        out = ""
        for k, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            body = mono if (mono and abs(a) == 1) else f"{abs(a)}{mono}"
            if not out:
                out = ("-" if a < 0 else "") + body
            else:
                out += (" - " if a < 0 else " + ") + body
        return out

    def _coerce(self, other) -> "TruncPoly":
        if isinstance(other, TruncPoly):
            return other
        if isinstance(other, int):
            return TruncPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self), len(other))
        return TruncPoly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return TruncPoly(-a for a in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = TruncPoly([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, k: int) -> "TruncPoly":
        """Multiply by ``q**k`` (k >= 0)."""
        if k < 0:
            raise ValueError("negative shift")
        if not self.coeffs:
            return self
        return TruncPoly([0] * k + list(self.coeffs))

    def truncate(self, threshold) -> "TruncPoly":
        return poly_truncate(self, threshold)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def to_list(self, length: int | None = None) -> list[int]:
        """Coefficient list, zero-padded (never cut) to ``length``."""
        c = list(self.coeffs)
        if length is not None:
            if length < len(c):
                raise ValueError(f"polynomial of degree {self.degree} does not fit in {length} slots")
            c += [0] * (length - len(c))
        return c

    def is_palindromic(self, degree: int | None = None) -> bool:
        n = self.degree if degree is None else degree
        if self.degree > n:
            return False
        return all(self[i] == self[n - i] for i in range(n + 1))


def poly_mul(a: TruncPoly, b: TruncPoly) -> TruncPoly:
    """Exact convolution product."""
    if a.is_zero() or b.is_zero():
        return TruncPoly()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                out[i + j] += x * y
    return TruncPoly(out)


def poly_truncate(p: TruncPoly, threshold) -> TruncPoly:
    """Keep the terms ``a_m q**m`` with ``m < threshold`` (strict).

    ``threshold`` may be an ``int`` or a ``Fraction``; comparison is exact.
    """
    theta = Fraction(threshold)
    # m < theta  <=>  m <= ceil(theta) - 1
    keep = math.ceil(theta)
    if keep <= 0:
        return TruncPoly()
    return TruncPoly(p.coeffs[:keep])


class MHSClass:
    """Laurent polynomial in ``u = Q(-1)``: a Hodge-Tate class in K_0(MHS).

    Stored sparsely as ``{exponent: coefficient}`` without zero entries.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, int] | None = None):
        c = {int(k): int(v) for k, v in (coeffs or {}).items() if v != 0}
        object.__setattr__(self, "coeffs", dict(sorted(c.items())))

    def __setattr__(self, name, value):
        raise AttributeError("MHSClass is immutable")

    @classmethod
    def tate(cls, k: int, mult: int = 1) -> "MHSClass":
        """Class of ``Q(-k)^mult``."""
        return cls({k: mult})

    @classmethod
    def from_poly(cls, p: TruncPoly) -> "MHSClass":
        return cls({k: a for k, a in enumerate(p.coeffs)})

    def to_poly(self) -> TruncPoly:
        if any(k < 0 for k in self.coeffs):
            raise ValueError("class has negative Tate exponents")
        top = max(self.coeffs, default=-1)
        return TruncPoly(self.coeffs.get(k, 0) for k in range(top + 1))

    def __getitem__(self, k: int) -> int:
        return self.coeffs.get(k, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MHSClass({0: other})
        if isinstance(other, TruncPoly):
            other = MHSClass.from_poly(other)
        if not isinstance(other, MHSClass):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("MHSClass", tuple(self.coeffs.items())))

    def __repr__(self) -> str:
        return f"MHSClass({self.coeffs})"

    def __add__(self, other):
        if isinstance(other, TruncPoly):
            other = MHSClass.from_poly(other)
        if not isinstance(other, MHSClass):
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return MHSClass(out)

    __radd__ = __add__

    def __neg__(self):
        return MHSClass({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return MHSClass({k: other * v for k, v in self.coeffs.items()})
        if isinstance(other, TruncPoly):
            other = MHSClass.from_poly(other)
        if not isinstance(other, MHSClass):
            return NotImplemented
        out: dict[int, int] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return MHSClass(out)

    __rmul__ = __mul__

    def twist(self, k: int) -> "MHSClass":
        """Tate twist by ``Q(-k)``, i.e. multiplication by ``u**k``."""
        return MHSClass({e + k: v for e, v in self.coeffs.items()})


def binomial(n: int, k: int) -> int:
    if n < 0:
        raise ValueError(f"binomial: negative n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(n: int, parts: Sequence[int]) -> int:
    if n < 0:
        raise ValueError(f"multinomial: negative n={n}")
    if any(p < 0 for p in parts) or sum(parts) != n:
        raise ValueError(f"parts {list(parts)} are not a composition of {n}")
    out = math.factorial(n)
    for p in parts:
        out //= math.factorial(p)
    return out


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All ``k``-tuples of non-negative integers summing to ``n``, in lex order."""
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def bounded_compositions(n: int, bounds: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Tuples ``(m_1, ..., m_k)`` with ``0 <= m_i <= bounds[i]`` and sum ``n``."""
    if not bounds:
        if n == 0:
            yield ()
        return
    head, tail = bounds[0], bounds[1:]
    room = sum(tail)
    for first in range(min(head, n), max(0, n - room) - 1, -1):
        for rest in bounded_compositions(n - first, tail):
            yield (first,) + rest


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by fraction Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, len(m)):
            f = m[r][col]
            if f:
                f /= p
                row_r, row_p = m[r], m[rank]
                for c in range(col, ncols):
                    row_r[c] -= f * row_p[c]
        rank += 1
        if rank == len(m):
            break
    return rank
