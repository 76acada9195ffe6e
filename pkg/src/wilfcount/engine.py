"""Functional-equation engine for the increasing pattern ``[1..k]``.

The catalytic variables are never symbolic: every substitution sends a
variable to a power of ``q`` times another variable and all start at 1, so
each position only ever carries a tuple of ``q``-exponents, one per family
(increasing subsequences of length ``2..k-1`` with that smallest entry).
Position ``c[0]`` is the family raised to the tail length when the position
is beheaded; ``c[-1]`` is the family that picks up a factor ``q``.

Equal tuples are interchangeable, so a state is a run-length encoded list of
``(tuple, count)`` pairs.  In truncated mode every coordinate is clamped at
``r + 1``; the final exponent is a nonnegative linear form in the
coordinates, so clamping cannot change anything below degree ``r + 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from . import _kernels
from .errors import ResourceLimitError
from .qpoly import QPoly

ExponentTuple = tuple[int, ...]

# largest n accepted by exact mode per k, before the guard needs overriding
EXACT_LIMITS = {3: 16, 4: 10}
EXACT_LIMIT_DEFAULT = 10


@dataclass(frozen=True)
class EngineConfig:
    """Pattern length ``k`` and mode: exact when ``r`` is None, else truncated at ``r``."""

    k: int
    r: int | None = None

    def __post_init__(self) -> None:
        if self.k < 3:
            raise ValueError(f"k must be at least 3, got {self.k}")
        if self.r is not None and self.r < 0:
            raise ValueError(f"r must be nonnegative, got {self.r}")

    @classmethod
    def exact(cls, k: int) -> EngineConfig:
        return cls(k, None)

    @classmethod
    def truncated(cls, k: int, r: int) -> EngineConfig:
        return cls(k, r)

    @property
    def is_exact(self) -> bool:
        return self.r is None

    @property
    def mode(self) -> str:
        return "exact" if self.r is None else "truncated"

    @property
    def clamp(self) -> int | None:
        return None if self.r is None else self.r + 1


@dataclass(frozen=True)
class SchemeState:
    """Run-length encoded, componentwise weakly increasing list of exponent tuples."""

    runs: tuple[tuple[ExponentTuple, int], ...]

    @classmethod
    def canonical(cls, runs: Iterable[tuple[ExponentTuple, int]]) -> SchemeState:
        """Drop empty runs and merge equal neighbours."""
        out: list[list] = []
        for t, c in runs:
            if c < 0:
                raise ValueError("run counts must be nonnegative")
            if c == 0:
                continue
            t = tuple(t)
            if out and out[-1][0] == t:
                out[-1][1] += c
            else:
                out.append([t, c])
        return cls(tuple((t, c) for t, c in out))

    @property
    def n(self) -> int:
        return sum(c for _, c in self.runs)

    @property
    def width(self) -> int:
        """Number of exponents per tuple, i.e. ``k - 2``; 0 for the empty state."""
        return len(self.runs[0][0]) if self.runs else 0

    def positions(self) -> list[ExponentTuple]:
        return [t for t, c in self.runs for _ in range(c)]

    def is_monotone(self) -> bool:
        """Adjacent runs distinct and componentwise weakly increasing."""
        for (t1, _), (t2, _) in zip(self.runs, self.runs[1:]):
            if t1 == t2 or any(a > b for a, b in zip(t1, t2)):
                return False
        return True

    def __str__(self) -> str:
        return "[" + ", ".join(f"({','.join(map(str, t))})x{c}" for t, c in self.runs) + "]"


@dataclass
class SchemeStats:
    states_visited: int = 0
    polynomial_ops: int = 0
    peak_level_width: int = 0


def initial_state(n: int, k: int) -> SchemeState:
    """The state whose value is the full distribution for ``S_n``."""
    if n < 1:
        raise ValueError("n must be positive")
    if k < 3:
        raise ValueError("k must be at least 3")
    return SchemeState((((0,) * (k - 2), n),))


def transitions(s: SchemeState, cfg: EngineConfig) -> list[tuple[int, SchemeState]]:
    """One ``(prefactor exponent, child)`` per choice of beheaded position.

    Choices run over positions ``1..n`` in order.  In truncated mode choices
    whose prefactor exceeds ``r`` are left out.
    """
    if s.runs and s.width != cfg.k - 2:
        raise ValueError(f"state tuples have width {s.width}, expected {cfg.k - 2}")
    out = []
    runs = s.runs
    tail = s.n
    for g, (t, a) in enumerate(runs):
        tail -= a
        tu = _kernels.update_tuple(t, t, cfg.clamp)
        after = tuple((_kernels.update_tuple(u, t, cfg.clamp), c) for u, c in runs[g + 1:])
        for j in range(1, a + 1):
            pe = t[0] * (a - j + tail)
            if cfg.r is not None and pe > cfg.r:
                continue
            child = SchemeState.canonical(runs[:g] + ((t, j - 1), (tu, a - j)) + after)
            out.append((pe, child))
    return out


def evaluate_naive(s: SchemeState, cfg: EngineConfig) -> QPoly:
    """Memoized top-down recursion straight from :func:`transitions`.

    Slow; kept as an independent check of the level-by-level kernels.
    """
    cap = cfg.r
    memo: dict[SchemeState, QPoly] = {}

    def go(state: SchemeState) -> QPoly:
        if not state.runs:
            return QPoly.one(cap)
        hit = memo.get(state)
        if hit is not None:
            return hit
        acc = QPoly.zero(cap)
        for pe, child in transitions(state, cfg):
            acc = acc + go(child).shift(pe)
        memo[state] = acc
        return acc

    return go(s)


@dataclass
class Engine:
    """Evaluates scheme states with a result cache and resource budgets.

    ``threads`` splits each level across worker threads; results do not
    depend on it.  ``exact_limits`` maps ``k`` to the largest ``n`` exact
    mode accepts; pass ``None`` to disable the guard.
    """

    threads: int = 1
    max_states: int | None = None
    max_seconds: float | None = None
    exact_limits: dict[int, int] | None = field(default_factory=lambda: dict(EXACT_LIMITS))
    _cache: dict = field(default_factory=dict, init=False, repr=False)
    _lattices: dict = field(default_factory=dict, init=False, repr=False)
    _stats: SchemeStats = field(default_factory=SchemeStats, init=False, repr=False)

    def run_stats(self) -> SchemeStats:
        """Counters of the most recent evaluation (zero if it was a cache hit)."""
        return SchemeStats(**vars(self._stats))

    def clear_cache(self) -> None:
        self._cache.clear()

    def exact_limit(self, k: int) -> int | None:
        if self.exact_limits is None:
            return None
        return self.exact_limits.get(k, EXACT_LIMIT_DEFAULT)

    def evaluate(self, s: SchemeState, cfg: EngineConfig) -> QPoly:
        if s.runs and s.width != cfg.k - 2:
            raise ValueError(f"state tuples have width {s.width}, expected {cfg.k - 2}")
        limit = self.exact_limit(cfg.k)
        if cfg.is_exact and limit is not None and s.n > limit:
            raise ResourceLimitError(
                f"exact mode for k={cfg.k} is limited to n <= {limit} (got n={s.n})"
            )
        key = (cfg, s)
        hit = self._cache.get(key)
        if hit is not None:
            self._stats = SchemeStats()
            return hit

        ctx = _kernels.RunContext(self.threads, self.max_states, self.max_seconds)
        try:
            result = self._run(s, cfg, ctx)
        finally:
            self._stats = SchemeStats(ctx.states_visited, ctx.polynomial_ops, ctx.peak_level_width)
        self._cache[key] = result
        return result

    def _run(self, s: SchemeState, cfg: EngineConfig, ctx: _kernels.RunContext) -> QPoly:
        if not s.runs:
            return QPoly.one(cfg.r)
        width = max(1, math.factorial(s.n).bit_length())
        if cfg.k == 3 and cfg.r is not None:
            vec = [0] * (cfg.r + 2)
            for (e,), c in s.runs:
                vec[min(e, cfg.r + 1)] += c
            packed = _kernels.push_dense3(tuple(vec), cfg.r, width, ctx)
            return QPoly(_kernels.unpack(packed, width, cfg.r + 1), cfg.r)
        lat = self._lattices.get((cfg.k, cfg.clamp))
        if lat is None:
            lat = self._lattices[(cfg.k, cfg.clamp)] = _kernels.Lattice(cfg.k, cfg.clamp)
        start = []
        for t, c in s.runs:
            if cfg.clamp is not None:
                t = tuple(min(x, cfg.clamp) for x in t)
            _kernels._append(start, lat.intern(t), c)
        packed = _kernels.push_runs(tuple(start), lat, cfg.r, width, ctx)
        length = None if cfg.r is None else cfg.r + 1
        return QPoly(_kernels.unpack(packed, width, length), cfg.r)

    def run_generic(self, s: SchemeState, cfg: EngineConfig) -> QPoly:
        """Evaluate with the run-length kernel even where a faster one exists."""
        ctx = _kernels.RunContext(self.threads, self.max_states, self.max_seconds)
        lat = _kernels.Lattice(cfg.k, cfg.clamp)
        start: list = []
        for t, c in s.runs:
            _kernels._append(start, lat.intern(tuple(t)), c)
        width = max(1, math.factorial(s.n).bit_length())
        packed = _kernels.push_runs(tuple(start), lat, cfg.r, width, ctx)
        length = None if cfg.r is None else cfg.r + 1
        return QPoly(_kernels.unpack(packed, width, length), cfg.r)

    def distribution(self, k: int, n: int) -> QPoly:
        """The full polynomial ``sum(q**N(pi))`` over ``S_n`` for ``[1..k]``."""
        return self.evaluate(initial_state(n, k), EngineConfig.exact(k))

    def truncated_counts(self, k: int, r: int, n: int) -> list[int]:
        """Entry ``j`` is the number of ``n``-permutations with exactly ``j`` occurrences."""
        p = self.evaluate(initial_state(n, k), EngineConfig.truncated(k, r))
        return [p.coeff(j) for j in range(r + 1)]

    def count_exactly(self, k: int, r: int, n: int) -> int:
        return self.truncated_counts(k, r, n)[-1]


_default_engine = Engine()


def default_engine() -> Engine:
    return _default_engine


def evaluate(s: SchemeState, cfg: EngineConfig) -> QPoly:
    return _default_engine.evaluate(s, cfg)


def distribution(k: int, n: int) -> QPoly:
    return _default_engine.distribution(k, n)


def truncated_counts(k: int, r: int, n: int) -> list[int]:
    return _default_engine.truncated_counts(k, r, n)


def count_exactly(k: int, r: int, n: int) -> int:
    return _default_engine.count_exactly(k, r, n)


def run_stats() -> SchemeStats:
    return _default_engine.run_stats()
