"""Moments of the occurrence count under the uniform distribution on ``S_n``."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable

from .engine import Engine, default_engine
from .qpoly import QPoly

DECIMAL_DIGITS = 40


def _check(p: QPoly) -> int:
    if p.cap is not None:
        raise ValueError("moments of a truncated distribution are meaningless")
    total = p.eval_at_one()
    if total <= 0:
        raise ValueError("distribution has zero total mass")
    return total


def mean(p: QPoly) -> Fraction:
    total = _check(p)
    return Fraction(sum(j * c for j, c in p.terms()), total)


def centered_moment(p: QPoly, order: int) -> Fraction:
    if order < 1:
        raise ValueError("order must be at least 1")
    total = _check(p)
    mu = mean(p)
    return sum((c * (j - mu) ** order for j, c in p.terms()), Fraction(0)) / total


def standardized_moment(p: QPoly, order: int) -> Fraction | Decimal:
    """``m_j / sigma**j``: exact for even orders, a 40-digit Decimal for odd ones."""
    var = centered_moment(p, 2)
    if var == 0:
        raise ValueError("distribution is degenerate (zero variance)")
    m = centered_moment(p, order)
    if order % 2 == 0:
        return m / var ** (order // 2)
    with localcontext() as ctx:
        ctx.prec = DECIMAL_DIGITS
        sigma = (Decimal(var.numerator) / Decimal(var.denominator)).sqrt()
        return (Decimal(m.numerator) / Decimal(m.denominator)) / sigma ** order


def _fmt(x: Fraction | Decimal) -> str:
    return f"{float(x):.6g}"


@dataclass
class MomentReport:
    n: int
    k: int
    mean: Fraction
    centered_moments: list[Fraction] = field(default_factory=list)  # orders 2..max
    standardized_moments: list[Fraction | Decimal] = field(default_factory=list)

    @property
    def variance(self) -> Fraction:
        return self.centered_moments[0]

    def render(self) -> str:
        lines = [f"k={self.k} n={self.n}", f"  mean      {self.mean} ({_fmt(self.mean)})"]
        for order, m in enumerate(self.centered_moments, start=2):
            lines.append(f"  m{order:<8d} {m} ({_fmt(m)})")
        for order, s in enumerate(self.standardized_moments, start=2):
            lines.append(f"  std m{order:<4d} {_fmt(s)}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "mean": str(self.mean),
            "centered_moments": {str(o): str(m) for o, m in enumerate(self.centered_moments, start=2)},
            "standardized_moments": {
                str(o): _fmt(s) for o, s in enumerate(self.standardized_moments, start=2)
            },
        }


def moment_report(p: QPoly, k: int, n: int, max_order: int = 6) -> MomentReport:
    mu = mean(p)
    centered = [centered_moment(p, j) for j in range(2, max_order + 1)]
    standardized = []
    if centered and centered[0] > 0:
        standardized = [standardized_moment(p, j) for j in range(2, max_order + 1)]
    return MomentReport(n, k, mu, centered, standardized)


def normality_report(
    k: int, n_range: Iterable[int], max_order: int = 6, engine: Engine | None = None
) -> list[MomentReport]:
    """Moment reports from exact distributions; compare the standardized
    moments with the normal values 1, 0, 3, 0, 15, ... by eye."""
    engine = engine or default_engine()
    return [moment_report(engine.distribution(k, n), k, n, max_order) for n in n_range]


def normal_moment(order: int) -> int:
    """Standardized moment of the normal distribution: ``(order-1)!!`` or 0."""
    if order % 2:
        return 0
    return math.prod(range(order - 1, 0, -2))
