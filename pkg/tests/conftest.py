from __future__ import annotations

import functools
import time
from contextlib import contextmanager

import pytest

from wilfcount import oracle

_ACCEPTANCE: list[tuple[str, str, str, float, str]] = []


@functools.cache
def _brute(k: int, n: int):
    return oracle.distribution_brute(oracle.increasing(k), n)


@pytest.fixture(scope="session")
def brute():
    """Brute-force distribution for ``[1..k]`` over ``S_n``, shared across tests."""
    return _brute


@contextmanager
def _criterion(cid: str, title: str):
    note: dict[str, str] = {}
    start = time.perf_counter()
    try:
        yield note
    except BaseException as exc:
        msg = f"{type(exc).__name__}: {exc}".splitlines()[0][:160]
        _ACCEPTANCE.append((cid, "FAIL", title, time.perf_counter() - start, msg))
        raise
    _ACCEPTANCE.append((cid, "PASS", title, time.perf_counter() - start, note.get("note", "")))


@pytest.fixture
def criterion():
    """Context manager recording one acceptance line: ``with criterion("C1", "..."):``."""
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for cid, status, title, elapsed, note in sorted(_ACCEPTANCE, key=lambda r: int(r[0][1:])):
        line = f"{cid:<4} {status}  {title} ({elapsed:.1f}s)"
        if note:
            line += f"  {note}"
        terminalreporter.write_line(line)
