"""Closed forms: ``A_[1]``, ``A_[2,1] = [n]!`` and ``a_r(n)`` for ``[1,2,3]``, ``r <= 7``.

``a_r(n)`` is the number of ``n``-permutations with exactly ``r``
occurrences of ``[1,2,3]``.  Each formula is a factorial ratio
``(2n - t)! / ((n - b)! (n + c)!)`` times a product of integer polynomials
in ``n``, transcribed coefficient for coefficient; the verifier compares
them against the engine instead of trusting them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .engine import Engine, default_engine
from .errors import DomainError, IntegrityError
from .qpoly import QPoly


def q_count_single(n: int) -> QPoly:
    """Distribution of occurrences of ``[1]``: every permutation has ``n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return QPoly.monomial(math.factorial(n), n)


def q_factorial(n: int) -> QPoly:
    """``[n]! = prod_{j=1..n} (1 + q + ... + q^(j-1))``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = QPoly.one()
    for j in range(1, n + 1):
        out = out * QPoly([1] * j)
    return out


@dataclass(frozen=True)
class ClosedForm:
    """``(2n - top)! / ((n - low)! (n + high)!) * prod(factors)(n)``.

    ``factors`` holds polynomials in ``n`` as coefficient tuples, highest
    degree first.
    """

    r: int
    top: int
    low: int
    high: int
    factors: tuple[tuple[int, ...], ...] = field(default=((1,),))

    @property
    def n_min(self) -> int:
        """Smallest ``n >= 1`` at which every factorial argument is nonnegative."""
        return max(1, -(-self.top // 2), self.low, -self.high)

    def poly_value(self, n: int) -> int:
        out = 1
        for coeffs in self.factors:
            v = 0
            for c in coeffs:
                v = v * n + c
            out *= v
        return out

    def exact_value(self, n: int) -> Fraction:
        if n < self.n_min:
            raise DomainError(f"a_{self.r}(n) is undefined for n = {n} < {self.n_min}")
        ratio = Fraction(
            math.factorial(2 * n - self.top),
            math.factorial(n - self.low) * math.factorial(n + self.high),
        )
        return ratio * self.poly_value(n)

    def __call__(self, n: int) -> int:
        v = self.exact_value(n)
        if v.denominator != 1:
            raise IntegrityError(f"a_{self.r}({n}) = {v} is not an integer")
        return v.numerator


CLOSED_FORMS: dict[int, ClosedForm] = {
    0: ClosedForm(0, 1, 1, 1, ((2,),)),
    1: ClosedForm(1, 1, 3, 3, ((6,),)),
    2: ClosedForm(2, 2, 4, 5, ((59, 117, 100),)),
    3: ClosedForm(3, 3, 5, 7, ((4, 0), (113, 506, 937, 1804))),
    4: ClosedForm(4, 4, 4, 9, ((
        3561, 3126, -46806, 12384, -659091, 2630634, 5520576, 26283456, -39191040,
    ),)),
    5: ClosedForm(5, 5, 5, 11, ((
        26246, 136646, -115872, 22524, -9648450, 71304534,
        381205612, 1607633896, 2800103664, 3611692800, -32891443200,
    ),)),
    6: ClosedForm(6, 6, 6, 13, ((
        193311, 2349954, 13035003, 95151030, 406430793, 2889552582,
        14335663329, 60005854890, 313010684796, 1025692693464,
        1283595375168, -6909513045120, -28177269120000,
    ),)),
    7: ClosedForm(7, 7, 5, 15, ((
        1386032, 13111080, 22526480, 355187760, -1654450096, 10534951680,
        15797223760, -305671694640, 3750695521216, -26631101348520,
        -86395090065440, -636425872408320, 3647384624274048,
        11386434230674560, 103032675524966400, -157858417817856000,
        -763734137886720000,
    ),)),
}


def n_min(r: int) -> int:
    return _form(r).n_min


def _form(r: int) -> ClosedForm:
    try:
        return CLOSED_FORMS[r]
    except KeyError:
        raise DomainError(f"no closed form for r = {r} (available: 0..7)") from None


def a_closed_form(r: int, n: int) -> int:
    return _form(r)(n)


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class VerificationRow:
    r: int
    n: int
    status: str  # "match", "mismatch", "non-integer" or "skipped"
    formula: int | Fraction | None = None
    engine: int | None = None
    note: str = ""


@dataclass
class VerificationReport:
    rows: list[VerificationRow] = field(default_factory=list)

    @property
    def mismatches(self) -> list[VerificationRow]:
        return [row for row in self.rows if row.status in ("mismatch", "non-integer")]

    @property
    def all_match(self) -> bool:
        return not self.mismatches

    def checked(self) -> list[VerificationRow]:
        return [row for row in self.rows if row.status != "skipped"]

    def render(self) -> str:
        lines = ["r   n   status       formula / engine"]
        for row in self.rows:
            if row.status == "skipped":
                lines.append(f"{row.r:<3d} {row.n:<3d} skipped      {row.note}")
            elif row.status == "match":
                lines.append(f"{row.r:<3d} {row.n:<3d} match        {row.engine}")
            else:
                lines.append(f"{row.r:<3d} {row.n:<3d} {row.status:<12s} {row.formula} / {row.engine}")
        checked = self.checked()
        lines.append(f"{len(checked) - len(self.mismatches)}/{len(checked)} cells match")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "all_match": self.all_match,
            "rows": [
                {
                    "r": row.r,
                    "n": row.n,
                    "status": row.status,
                    "formula": None if row.formula is None else str(row.formula),
                    "engine": None if row.engine is None else str(row.engine),
                    "note": row.note,
                }
                for row in self.rows
            ],
        }


def verify_formulas(
    r_set: Iterable[int], n_range: Iterable[int], engine: Engine | None = None
) -> VerificationReport:
    """Compare ``a_r(n)`` with the engine's truncated counts for ``[1,2,3]``.

    Mismatches are recorded, never raised.  One truncated run at the largest
    requested ``r`` serves every ``r`` for a given ``n``.
    """
    engine = engine or default_engine()
    rs = sorted(set(r_set))
    ns = sorted(set(n_range))
    for r in rs:
        _form(r)
    report = VerificationReport()
    counts: dict[int, list[int]] = {}
    for r in rs:
        for n in ns:
            form = CLOSED_FORMS[r]
            if n < form.n_min:
                report.rows.append(VerificationRow(r, n, "skipped", note=f"n < n_min = {form.n_min}"))
                continue
            if n not in counts:
                counts[n] = engine.truncated_counts(3, rs[-1], n)
            got = counts[n][r]
            value = form.exact_value(n)
            if value.denominator != 1:
                report.rows.append(VerificationRow(r, n, "non-integer", value, got))
            elif value.numerator == got:
                report.rows.append(VerificationRow(r, n, "match", value.numerator, got))
            else:
                report.rows.append(VerificationRow(r, n, "mismatch", value.numerator, got))
    return report
