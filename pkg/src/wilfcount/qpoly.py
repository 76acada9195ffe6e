"""Dense univariate polynomials in ``q`` with big-integer coefficients.

A :class:`QPoly` may carry a truncation order ``cap``; every operation on a
capped polynomial drops terms of degree above the cap.
"""
from __future__ import annotations

import json
from typing import Iterable, Sequence

from .errors import CapMismatchError


class QPoly:
    """Immutable polynomial ``sum(coeffs[j] * q**j)``, optionally truncated.

    >>> QPoly([5, 1]) + QPoly([14, 6, 3, 0, 1])
    QPoly('q^4+3q^2+7q+19')
    """

    __slots__ = ("_coeffs", "_cap", "_hash")

    def __init__(self, coeffs: Iterable[int] = (0,), cap: int | None = None):
        c = [int(x) for x in coeffs]
        if cap is not None:
            if cap < 0:
                raise ValueError(f"cap must be nonnegative, got {cap}")
            del c[cap + 1:]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0]
        self._coeffs = tuple(c)
        self._cap = cap
        self._hash = None

    # construction helpers

    @classmethod
    def monomial(cls, coeff: int, exp: int, cap: int | None = None) -> QPoly:
        if exp < 0:
            raise ValueError("exponent must be nonnegative")
        if cap is not None and exp > cap:
            return cls((0,), cap)
        return cls([0] * exp + [coeff], cap)

    @classmethod
    def one(cls, cap: int | None = None) -> QPoly:
        return cls((1,), cap)

    @classmethod
    def zero(cls, cap: int | None = None) -> QPoly:
        return cls((0,), cap)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int]], cap: int | None = None) -> QPoly:
        """Build from ``(exponent, coefficient)`` pairs; repeated exponents add up."""
        acc: dict[int, int] = {}
        for e, c in terms:
            e = int(e)
            if e < 0:
                raise ValueError("exponent must be nonnegative")
            acc[e] = acc.get(e, 0) + int(c)
        if not acc:
            return cls((0,), cap)
        dense = [0] * (max(acc) + 1)
        for e, c in acc.items():
            dense[e] = c
        return cls(dense, cap)

    # accessors

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def cap(self) -> int | None:
        return self._cap

    @property
    def degree(self) -> int:
        """Degree of the polynomial; ``-1`` for zero."""
        if self.is_zero():
            return -1
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return self._coeffs == (0,)

    def coeff(self, j: int) -> int:
        if j < 0:
            raise ValueError("exponent must be nonnegative")
        return self._coeffs[j] if j < len(self._coeffs) else 0

    def eval_at_one(self) -> int:
        return sum(self._coeffs)

    def terms(self) -> list[tuple[int, int]]:
        """Nonzero ``(exponent, coefficient)`` pairs in ascending order."""
        return [(e, c) for e, c in enumerate(self._coeffs) if c]

    # arithmetic

    def _join_cap(self, other: QPoly) -> int | None:
        if self._cap is not None and other._cap is not None and self._cap != other._cap:
            raise CapMismatchError(f"cannot add polynomials capped at {self._cap} and {other._cap}")
        return self._cap if self._cap is not None else other._cap

    def __add__(self, other: QPoly) -> QPoly:
        if not isinstance(other, QPoly):
            return NotImplemented
        cap = self._join_cap(other)
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return QPoly(out, cap)

    def __mul__(self, other: QPoly) -> QPoly:
        if isinstance(other, int):
            return QPoly([c * other for c in self._coeffs], self._cap)
        if not isinstance(other, QPoly):
            return NotImplemented
        caps = [c for c in (self._cap, other._cap) if c is not None]
        cap = min(caps) if caps else None
        a, b = self._coeffs, other._coeffs
        size = len(a) + len(b) - 1
        if cap is not None:
            size = min(size, cap + 1)
        out = [0] * size
        for i, x in enumerate(a):
            if not x or i >= size:
                continue
            for j, y in enumerate(b[: size - i]):
                out[i + j] += x * y
        return QPoly(out, cap)

    __rmul__ = __mul__

    def shift(self, e: int) -> QPoly:
        """Multiply by ``q**e``."""
        if e < 0:
            raise ValueError("shift must be nonnegative")
        if e == 0 or self.is_zero():
            return self
        return QPoly((0,) * e + self._coeffs, self._cap)

    def chop(self, r: int) -> QPoly:
        """Drop every term of degree above ``r`` and set the cap to ``r``."""
        return QPoly(self._coeffs, r)

    # comparison / hashing

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QPoly):
            return NotImplemented
        return self._coeffs == other._coeffs and self._cap == other._cap

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._coeffs, self._cap))
        return self._hash

    def same_coeffs(self, other: QPoly) -> bool:
        """Equality of coefficients, ignoring the cap."""
        return self._coeffs == other._coeffs

    # rendering

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        if self._cap is None:
            return f"QPoly({render(self)!r})"
        return f"QPoly({render(self)!r}, cap={self._cap})"

    def to_json(self) -> list[list[str]]:
        return to_json(self)


def add(p: QPoly, p2: QPoly) -> QPoly:
    return p + p2


def mul(p: QPoly, p2: QPoly) -> QPoly:
    return p * p2


def shift(p: QPoly, e: int) -> QPoly:
    return p.shift(e)


def chop(p: QPoly, r: int) -> QPoly:
    return p.chop(r)


def eval_at_one(p: QPoly) -> int:
    return p.eval_at_one()


def coeff(p: QPoly, j: int) -> int:
    return p.coeff(j)


def render(p: QPoly) -> str:
    """Render in descending powers, e.g. ``q^4+3q^2+6q+14``."""
    parts = []
    for e, c in reversed(p.terms()):
        if e == 0:
            parts.append(str(c))
        else:
            mono = "q" if e == 1 else f"q^{e}"
            parts.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(parts) if parts else "0"


def parse(text: str, cap: int | None = None) -> QPoly:
    """Inverse of :func:`render` (accepts ``*`` and spaces as well)."""
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise ValueError("empty polynomial")
    terms = []
    for part in s.split("+"):
        if not part:
            raise ValueError(f"malformed polynomial {text!r}")
        if "q" not in part:
            terms.append((0, int(part)))
            continue
        head, _, tail = part.partition("q")
        c = int(head) if head else 1
        if not tail:
            e = 1
        elif tail.startswith("^"):
            e = int(tail[1:].strip("{}"))
        else:
            raise ValueError(f"malformed term {part!r}")
        terms.append((e, c))
    return QPoly.from_terms(terms, cap)


def to_json(p: QPoly) -> list[list[str]]:
    """``[[exponent, coefficient], ...]`` as decimal strings, ascending exponents."""
    return [[str(e), str(c)] for e, c in p.terms()]


def from_json(pairs: Sequence[Sequence[str | int]], cap: int | None = None) -> QPoly:
    terms = []
    last = -1
    for pair in pairs:
        if len(pair) != 2:
            raise ValueError(f"expected [exponent, coefficient], got {pair!r}")
        e, c = int(pair[0]), int(pair[1])
        if e <= last:
            raise ValueError("exponents must be strictly ascending")
        if c < 0:
            raise ValueError("coefficients must be nonnegative")
        last = e
        terms.append((e, c))
    return QPoly.from_terms(terms, cap)


def dumps(p: QPoly) -> str:
    return json.dumps(to_json(p))


def loads(text: str, cap: int | None = None) -> QPoly:
    return from_json(json.loads(text), cap)
