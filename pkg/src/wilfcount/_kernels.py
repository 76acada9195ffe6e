"""Level-by-level evaluation kernels for the scheme.

Both kernels accumulate forward: a weight is pushed from every state at level
``m`` to its children at level ``m - 1``, and the value at the empty state is
the answer.  Only two levels are alive at any time.

Polynomials are packed into a single Python int with ``width`` bits per
coefficient, so addition is one big-int add and multiplication by ``q**e``
is a left shift.  ``width`` must exceed every coefficient that can occur;
for a start state of total count ``n`` all coefficients are at most ``n!``.

When the chosen position has prefactor exponent 0, all its sub-choices have
the same weight and the children only differ in how one run is split, so
they are pushed as one "line" and expanded once per distinct line.
"""
from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .errors import ResourceLimitError


@dataclass
class RunContext:
    """Budget, instrumentation and threading for one evaluation."""

    threads: int = 1
    max_states: int | None = None
    max_seconds: float | None = None
    states_visited: int = 0
    polynomial_ops: int = 0
    peak_level_width: int = 0

    def __post_init__(self) -> None:
        self._start = time.monotonic()

    def enter_level(self, width: int) -> None:
        self.states_visited += width
        self.peak_level_width = max(self.peak_level_width, width)
        if self.max_states is not None and self.states_visited > self.max_states:
            raise ResourceLimitError(f"state budget of {self.max_states} exceeded")
        if self.max_seconds is not None and time.monotonic() - self._start > self.max_seconds:
            raise ResourceLimitError(f"time budget of {self.max_seconds}s exceeded")

    def map_level(self, step: Callable, items: list) -> tuple[dict, dict]:
        """Run ``step`` over ``items`` (possibly in chunks on threads) and merge."""
        if self.threads <= 1 or len(items) < 2 * self.threads:
            nxt, lines, ops = step(items)
            self.polynomial_ops += ops
            return nxt, lines
        size = -(-len(items) // self.threads)
        chunks = [items[i:i + size] for i in range(0, len(items), size)]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            parts = list(pool.map(step, chunks))
        nxt, lines, ops = parts[0]
        for p_nxt, p_lines, p_ops in parts[1:]:
            for key, val in p_nxt.items():
                nxt[key] = nxt.get(key, 0) + val
            for key, val in p_lines.items():
                lines[key] = lines.get(key, 0) + val
            ops += p_ops
        self.polynomial_ops += ops
        return nxt, lines


class Lattice:
    """Interned exponent tuples and their update table for one ``(k, clamp)``."""

    def __init__(self, k: int, clamp: int | None):
        self.k = k
        self.clamp = clamp
        self.ids: dict[tuple[int, ...], int] = {}
        self.tuples: list[tuple[int, ...]] = []
        self.prefactor: list[int] = []
        self._upd: dict[tuple[int, int], int] = {}
        self._lock = threading.Lock()

    def intern(self, t: tuple[int, ...]) -> int:
        i = self.ids.get(t)
        if i is None:
            with self._lock:
                i = self.ids.get(t)
                if i is None:
                    i = len(self.tuples)
                    self.tuples.append(t)
                    self.prefactor.append(t[0])
                    self.ids[t] = i
        return i

    def update(self, u: int, t: int) -> int:
        """Id of the tuple at a position after a chosen position with tuple ``t``."""
        key = (u, t)
        v = self._upd.get(key)
        if v is None:
            v = self._upd[key] = self.intern(update_tuple(self.tuples[u], self.tuples[t], self.clamp))
        return v


def update_tuple(u: tuple[int, ...], t: tuple[int, ...], clamp: int | None) -> tuple[int, ...]:
    new = [u[m] + t[m + 1] for m in range(len(u) - 1)]
    new.append(u[-1] + 1)
    if clamp is not None:
        new = [min(x, clamp) for x in new]
    return tuple(new)


def _append(ch: list, t: int, c: int) -> None:
    if ch and ch[-2] == t:
        ch[-1] += c
    else:
        ch.append(t)
        ch.append(c)


def push_runs(start: tuple, lat: Lattice, r: int | None, width: int, ctx: RunContext) -> int:
    """Generic kernel over run-length states ``(id0, count0, id1, count1, ...)``."""
    mask = None if r is None else (1 << (width * (r + 1))) - 1
    upd = lat.update
    pf = lat.prefactor
    total = sum(start[1::2])
    cur = {start: 1}

    for m in range(total, 0, -1):
        ctx.enter_level(len(cur))

        def step(items, m=m):
            nxt: dict = {}
            lines: dict = {}
            ops = 0
            get = nxt.get
            for s, w in items:
                size = len(s)
                tail = m
                for g in range(0, size, 2):
                    t = s[g]
                    a = s[g + 1]
                    tail -= a
                    p = pf[t]
                    if p and r is not None and p * tail > r:
                        continue
                    after: list = []
                    for h in range(g + 2, size, 2):
                        _append(after, upd(s[h], t), s[h + 1])
                    tu = upd(t, t)
                    if p == 0:
                        key = (s[:g], t, tu, a - 1, tuple(after))
                        lines[key] = lines.get(key, 0) + w
                        ops += 1
                        continue
                    lo = 1 if r is None else max(1, a + tail - r // p)
                    for j in range(lo, a + 1):
                        ch = list(s[:g])
                        if j > 1:
                            _append(ch, t, j - 1)
                        if a > j:
                            _append(ch, tu, a - j)
                        for i in range(0, len(after), 2):
                            _append(ch, after[i], after[i + 1])
                        ch = tuple(ch)
                        x = w << (width * p * (a - j + tail))
                        if mask is not None:
                            x &= mask
                        nxt[ch] = get(ch, 0) + x
                        ops += 1
            return nxt, lines, ops

        nxt, lines = ctx.map_level(step, list(cur.items()))
        get = nxt.get
        for (prefix, t, tu, span, after), w in lines.items():
            for u in range(span + 1):
                ch = list(prefix)
                if u:
                    _append(ch, t, u)
                if span > u:
                    _append(ch, tu, span - u)
                for i in range(0, len(after), 2):
                    _append(ch, after[i], after[i + 1])
                ch = tuple(ch)
                nxt[ch] = get(ch, 0) + w
            ctx.polynomial_ops += span + 1
        cur = nxt
    ctx.enter_level(len(cur))
    return cur.get((), 0)


def push_dense3(start: tuple[int, ...], r: int, width: int, ctx: RunContext) -> int:
    """Kernel for the pattern ``[1,2,3]`` in truncated mode.

    A state is the count vector ``(a_0, ..., a_{r+1})``: ``a_g`` positions
    carry the value ``q**g``.  The exponents form a chain, so the vector is
    already canonical.
    """
    top = r + 1
    mask = (1 << (width * (r + 1))) - 1
    total = sum(start)
    cur = {tuple(start): 1}

    for m in range(total, 0, -1):
        ctx.enter_level(len(cur))

        def step(items, m=m):
            nxt: dict = {}
            lines: dict = {}
            ops = 0
            get = nxt.get
            for a, w in items:
                a0 = a[0]
                if a0:
                    # children (u, a0-1-u) followed by the shifted rest
                    if top >= 2:
                        key = (a0 - 1, a[1:top - 1] + (a[top - 1] + a[top],))
                    else:
                        key = (a0 - 1, a[1])
                    lines[key] = lines.get(key, 0) + w
                    ops += 1
                tail = m - a0
                for g in range(1, top + 1):
                    ag = a[g]
                    tail -= ag
                    if not ag or g * tail > r:
                        continue
                    lo = max(1, ag + tail - r // g)
                    head = a[:g]
                    rest = a[g + 1:]
                    for j in range(lo, ag + 1):
                        c = head + (j - 1, ag - j) + rest
                        ch = c[:top] + (c[top] + c[top + 1],)
                        x = (w << (width * g * (ag - j + tail))) & mask
                        nxt[ch] = get(ch, 0) + x
                        ops += 1
            return nxt, lines, ops

        nxt, lines = ctx.map_level(step, list(cur.items()))
        get = nxt.get
        if top >= 2:
            for (span, rest), w in lines.items():
                for u in range(span + 1):
                    ch = (u, span - u) + rest
                    nxt[ch] = get(ch, 0) + w
                ctx.polynomial_ops += span + 1
        else:
            for (span, extra), w in lines.items():
                for u in range(span + 1):
                    ch = (u, span - u + extra)
                    nxt[ch] = get(ch, 0) + w
                ctx.polynomial_ops += span + 1
        cur = nxt
    ctx.enter_level(len(cur))
    return cur.get((0,) * (top + 1), 0)


def unpack(value: int, width: int, length: int | None = None) -> list[int]:
    """Split a packed polynomial into coefficients (ascending)."""
    lowmask = (1 << width) - 1
    out = []
    if length is None:
        while value:
            out.append(value & lowmask)
            value >>= width
    else:
        for _ in range(length):
            out.append(value & lowmask)
            value >>= width
    return out or [0]
