"""Acceptance criteria 1-9.

Each test records one PASS/FAIL line, printed in the terminal summary.  Run
on its own with ``pytest tests/test_acceptance.py``.
"""
import math
import time
from fractions import Fraction

import pytest
from reference_values import ONE_1234, PATTERN_123, PATTERN_1234, PATTERN_1234_ERRATA

from wilfcount import analysis, formulas, qpoly
from wilfcount.engine import Engine, EngineConfig, initial_state

# outputs of criteria 1-5 computed single-threaded, compared again under C9
_OUTPUTS: dict[str, list[str]] = {}


def c1_output(eng):
    return [qpoly.render(eng.distribution(3, n)) for n in range(1, 9)]


def c2_output(eng):
    return [qpoly.render(eng.distribution(4, n)) for n in range(1, 9)]


def c3_output(eng):
    return [qpoly.render(eng.distribution(k, n)) for k in (3, 4, 5) for n in range(1, 9)]


C4_CASES = [(3, 4, 12), (4, 2, 9), (5, 2, 9)]


def c4_output(eng):
    out = []
    for k, rmax, nmax in C4_CASES:
        for n in range(1, nmax + 1):
            for r in range(rmax + 1):
                p = eng.evaluate(initial_state(n, k), EngineConfig.truncated(k, r))
                out.append(f"{k} {r} {n} {qpoly.render(p)}")
    return out


def c5_output(eng, nmax=23):
    return [str(eng.count_exactly(4, 1, n)) for n in range(1, nmax + 1)]


def _single(name, fn):
    if name not in _OUTPUTS:
        _OUTPUTS[name] = fn(Engine(threads=1))
    return _OUTPUTS[name]


def test_c1_pattern_123_golden(criterion):
    with criterion("C1", "exact k=3 reproduces f_1..f_8"):
        start = time.perf_counter()
        got = _single("c1", c1_output)
        elapsed = time.perf_counter() - start
        assert got == [PATTERN_123[n] for n in range(1, 9)]
        assert elapsed < 10


def test_c2_pattern_1234_golden(criterion):
    with criterion("C2", "exact k=4 reproduces g_1..g_8") as note:
        start = time.perf_counter()
        got = _single("c2", c2_output)
        elapsed = time.perf_counter() - start
        for n in range(1, 9):
            if n in PATTERN_1234_ERRATA:
                # the printed value has total mass != n!, so compare with the correction
                assert qpoly.parse(PATTERN_1234[n]).eval_at_one() != math.factorial(n)
                assert got[n - 1] == PATTERN_1234_ERRATA[n]
            else:
                assert got[n - 1] == PATTERN_1234[n]
        assert elapsed < 120
        fixes = ", ".join(
            f"n={n} printed {PATTERN_1234[n]!r} has mass != {n}!, got {v!r}"
            for n, v in PATTERN_1234_ERRATA.items()
        )
        note["note"] = f"byte-exact except erratum: {fixes}"


@pytest.mark.xfail(strict=True, reason="printed g_3 = 3 contradicts |S_3| = 6")
@pytest.mark.parametrize("n", sorted(PATTERN_1234_ERRATA))
def test_c2_printed_erratum_verbatim(n):
    assert qpoly.render(Engine().distribution(4, n)) == PATTERN_1234[n]


def test_c3_oracle_equivalence(criterion, brute):
    with criterion("C3", "exact engine = brute force, k in {3,4,5}, n <= 8"):
        start = time.perf_counter()
        got = _single("c3", c3_output)
        expected = [qpoly.render(brute(k, n)) for k in (3, 4, 5) for n in range(1, 9)]
        assert got == expected
        assert time.perf_counter() - start < 300


def test_c4_truncation_soundness(criterion):
    with criterion("C4", "truncated = chopped exact (k=3 r<=4 n<=12; k=4,5 r<=2 n<=9)"):
        start = time.perf_counter()
        got = _single("c4", c4_output)
        eng = Engine()
        expected = []
        for k, rmax, nmax in C4_CASES:
            for n in range(1, nmax + 1):
                full = eng.distribution(k, n)
                for r in range(rmax + 1):
                    expected.append(f"{k} {r} {n} {qpoly.render(qpoly.chop(full, r))}")
        assert got == expected
        assert time.perf_counter() - start < 300


def test_c5_one_occurrence_sequence(criterion):
    with criterion("C5", "k=4 r=1 reproduces the 23 published terms; stretch to n=40") as note:
        start = time.perf_counter()
        got = _single("c5", c5_output)
        first = time.perf_counter() - start
        assert got == [str(v) for v in ONE_1234]
        assert first < 120

        eng = Engine()
        start = time.perf_counter()
        more = [eng.count_exactly(4, 1, n) for n in range(24, 41)]
        stretch = time.perf_counter() - start
        # each term counts permutations, so it grows and stays below n!
        assert all(a < b for a, b in zip([ONE_1234[-1]] + more, more))
        assert all(v < math.factorial(n) for n, v in zip(range(24, 41), more))
        assert stretch < 30 * 60
        note["note"] = f"n<=23 in {first:.1f}s, n=24..40 in {stretch:.1f}s, a(40)={more[-1]}"


def test_c6_formula_verification(criterion):
    with criterion("C6", "closed forms a_0..a_7 vs engine over [n_min, 25]") as note:
        start = time.perf_counter()
        report = formulas.verify_formulas(range(8), range(1, 26), engine=Engine())
        elapsed = time.perf_counter() - start
        checked = report.checked()
        assert len(checked) == sum(26 - formulas.n_min(r) for r in range(8))
        assert not [row for row in report.mismatches if row.r <= 2]
        findings = [f"r={row.r} n={row.n}: formula {row.formula} engine {row.engine}" for row in report.mismatches]
        note["note"] = f"{len(checked) - len(report.mismatches)}/{len(checked)} cells match" + (
            "; findings: " + "; ".join(findings) if findings else ""
        )
        print(report.render())
        assert elapsed < 600


def test_c7_mass_and_mean(criterion):
    with criterion("C7", "mass n! and mean C(n,k)/k! for criteria 1-3"):
        eng = Engine()
        for k in (3, 4, 5):
            for n in range(1, 9):
                p = eng.distribution(k, n)
                assert qpoly.eval_at_one(p) == math.factorial(n)
                assert analysis.mean(p) == Fraction(math.comb(n, k), math.factorial(k))


def _slope(xs, ys):
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)


def test_c8_polynomial_time(criterion):
    with criterion("C8", "k=3 r=2 runtime over n in {25,50,100}: slope <= 6, n=100 < 60s") as note:
        ns = [25, 50, 100]
        times = []
        for n in ns:
            start = time.perf_counter()
            Engine().truncated_counts(3, 2, n)
            times.append(time.perf_counter() - start)
        slope = _slope([math.log(n) for n in ns], [math.log(t) for t in times])
        note["note"] = "times " + ", ".join(f"{t:.2f}s" for t in times) + f", slope {slope:.2f}"
        assert slope <= 6
        assert times[-1] < 60


def test_c9_thread_determinism(criterion):
    with criterion("C9", "criteria 1-5 outputs identical with 1 and 4 threads"):
        for name, fn in [("c1", c1_output), ("c2", c2_output), ("c3", c3_output), ("c4", c4_output), ("c5", c5_output)]:
            single = _single(name, fn)
            assert fn(Engine(threads=4)) == single, name
