"""Brute-force ground truth for pattern occurrences and catalytic weights.

Everything here enumerates directly; it is meant for small ``n`` only and is
used to cross-check the functional-equation engine.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ResourceLimitError
from .qpoly import QPoly

BRUTE_FORCE_LIMIT = 10

Permutation = tuple[int, ...]


def is_permutation(seq: Sequence[int]) -> bool:
    return sorted(seq) == list(range(1, len(seq) + 1))


def as_permutation(seq: Sequence[int] | str) -> Permutation:
    """Coerce ``seq`` to a permutation tuple; strings like ``"51324"`` are split by digit."""
    if isinstance(seq, str):
        seq = [int(ch) for ch in seq.replace(",", "").replace(" ", "")]
    perm = tuple(int(x) for x in seq)
    if not is_permutation(perm):
        raise ValueError(f"{list(perm)} is not a permutation of 1..{len(perm)}")
    return perm


def increasing(k: int) -> Permutation:
    return tuple(range(1, k + 1))


def reduce(values: Sequence[float]) -> Permutation:
    """The permutation order-isomorphic to ``values``.

    >>> reduce([6, 3, 8, 2])
    (3, 2, 4, 1)
    """
    if len(values) == 0:
        raise ValueError("cannot reduce an empty list")
    if len(set(values)) != len(values):
        raise ValueError("values must be distinct")
    order = sorted(range(len(values)), key=lambda i: values[i])
    out = [0] * len(values)
    for rank, i in enumerate(order, start=1):
        out[i] = rank
    return tuple(out)


def occurrences(pi: Sequence[int], sigma: Sequence[int]) -> int:
    """Number of index subsets of ``pi`` whose reduction equals ``sigma``."""
    pi = as_permutation(pi)
    sigma = as_permutation(sigma)
    k = len(sigma)
    if k > len(pi):
        raise ValueError("pattern longer than permutation")
    # positions of sigma sorted by value: a subsequence matches iff its values
    # increase along this order
    by_value = sorted(range(k), key=lambda i: sigma[i])
    count = 0
    for idx in itertools.combinations(range(len(pi)), k):
        vals = [pi[idx[i]] for i in by_value]
        if all(a < b for a, b in zip(vals, vals[1:])):
            count += 1
    return count


def distribution_brute(sigma: Sequence[int], n: int, limit: int | None = BRUTE_FORCE_LIMIT) -> QPoly:
    """``sum(q**occurrences(pi, sigma) for pi in S_n)`` by exhaustive enumeration."""
    sigma = as_permutation(sigma)
    if n < 1:
        raise ValueError("n must be positive")
    if limit is not None and n > limit:
        raise ResourceLimitError(f"brute force over S_{n} exceeds the limit n <= {limit}")
    if len(sigma) > n:
        return QPoly.monomial(_factorial(n), 0)
    hist = Counter(occurrences(pi, sigma) for pi in itertools.permutations(range(1, n + 1)))
    return QPoly.from_terms(hist.items())


def _factorial(n: int) -> int:
    out = 1
    for j in range(2, n + 1):
        out *= j
    return out


@dataclass(frozen=True)
class CatalyticWeight:
    """Exponents of the monomial ``weight(pi)`` for the pattern ``[1..k]``.

    ``families[m][i]`` counts increasing subsequences of length ``m`` whose
    smallest entry is ``i`` (``m = 2..k-1``); zero exponents are omitted.
    For ``k = 3`` the ``x`` variables are family 2; for ``k = 4`` ``x`` is
    family 3 and ``y`` is family 2.
    """

    k: int
    q_exp: int
    families: dict[int, dict[int, int]] = field(default_factory=dict)

    def family(self, m: int) -> dict[int, int]:
        return self.families.get(m, {})

    @property
    def x(self) -> dict[int, int]:
        return self.family(self.k - 1)

    @property
    def y(self) -> dict[int, int]:
        if self.k != 4:
            raise AttributeError("y variables exist only for k = 4")
        return self.family(2)


def _clean(fams: dict[int, dict[int, int]]) -> dict[int, dict[int, int]]:
    return {m: {i: e for i, e in sorted(fam.items()) if e} for m, fam in fams.items()}


def catalytic_weight(pi: Sequence[int] | str, k: int) -> CatalyticWeight:
    """Weight of ``pi``; entries need only be distinct, families are keyed by value."""
    if isinstance(pi, str):
        pi = [int(ch) for ch in pi]
    pi = tuple(int(x) for x in pi)
    if len(set(pi)) != len(pi):
        raise ValueError("entries must be distinct")
    if k < 3:
        raise ValueError("k must be at least 3")
    n = len(pi)
    # inc[m][p]: increasing subsequences of length m starting at position p
    inc = {1: [1] * n}
    for m in range(2, k + 1):
        prev = inc[m - 1]
        inc[m] = [
            sum(prev[p2] for p2 in range(p + 1, n) if pi[p2] > pi[p])
            for p in range(n)
        ]
    families = {m: {pi[p]: inc[m][p] for p in range(n)} for m in range(2, k)}
    return CatalyticWeight(k, sum(inc[k]), _clean(families))


def behead_check(pi: Sequence[int], k: int) -> bool:
    """Check the beheading identity ``weight(pi) = prefactor * weight(pi')|subst``.

    With ``i = pi[0]`` and ``pi'`` the reduction of ``pi[1:]``: the prefactor
    is the family-2 variable at ``i`` to the power ``n - i``; for every index
    ``j >= i`` of ``pi'`` the family ``k-1`` variable becomes ``q`` times the
    variable at ``j + 1`` and every lower family ``m`` becomes the family
    ``m + 1`` variable at ``i`` times the family ``m`` variable at ``j + 1``.
    """
    pi = as_permutation(pi)
    n = len(pi)
    if n < 2:
        raise ValueError("need a permutation of length at least 2")
    i = pi[0]
    lhs = catalytic_weight(pi, k)
    inner = catalytic_weight(reduce(pi[1:]), k)

    q_exp = inner.q_exp
    fams: dict[int, dict[int, int]] = {m: {} for m in range(2, k)}

    def bump(m: int, idx: int, e: int) -> None:
        fams[m][idx] = fams[m].get(idx, 0) + e

    bump(2, i, n - i)
    for m in range(2, k):
        for j, e in inner.family(m).items():
            if j < i:
                bump(m, j, e)
                continue
            bump(m, j + 1, e)
            if m == k - 1:
                q_exp += e
            else:
                bump(m + 1, i, e)
    return lhs == CatalyticWeight(k, q_exp, _clean(fams))
