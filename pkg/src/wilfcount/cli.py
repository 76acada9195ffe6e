"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 verification mismatch, 3 resource
limit.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import tempfile
from pathlib import Path
from typing import Sequence

from . import analysis, formulas, oracle
from .engine import Engine, EngineConfig, initial_state
from .errors import ResourceLimitError
from .qpoly import QPoly, from_json, render, to_json

log = logging.getLogger("wilfcount")

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_RESOURCE = 0, 1, 2, 3
CACHE_FORMAT = 1
CACHE_ENV = "WILFCOUNT_CACHE_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> list[int]:
    """``"5"``, ``"1..8"`` or ``"3,5,7..9"`` to a sorted list of ints."""
    out: set[int] = set()
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                lo_i, hi_i = int(lo), int(hi)
                if lo_i > hi_i:
                    raise ValueError
                out.update(range(lo_i, hi_i + 1))
            else:
                out.add(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}") from None
    return sorted(out)


def pattern_to_k(text: str) -> int:
    digits = text.replace(",", "").replace("[", "").replace("]", "")
    if not digits.isdigit() or [int(ch) for ch in digits] != list(range(1, len(digits) + 1)):
        raise argparse.ArgumentTypeError(f"only increasing patterns like 123 or 1234 are supported, got {text!r}")
    return len(digits)


class ResultCache:
    """One JSON file per ``(k, mode, r)`` holding serialized results by ``n``."""

    def __init__(self, directory: Path, k: int, mode: str, r: int | None):
        self.header = {"format": CACHE_FORMAT, "k": k, "mode": mode, "r": r}
        name = f"k{k}-{mode}" + ("" if r is None else f"-r{r}") + ".json"
        self.path = directory / name
        self.entries: dict[str, list] = {}
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        try:
            data = json.loads(self.path.read_text())
        except (OSError, ValueError) as exc:
            log.warning("ignoring unreadable cache %s: %s", self.path, exc)
            return
        if not isinstance(data, dict) or data.get("header") != self.header:
            log.warning("ignoring cache %s: header does not match this request", self.path)
            return
        entries = data.get("entries")
        if isinstance(entries, dict):
            self.entries = entries

    def get(self, n: int) -> QPoly | None:
        raw = self.entries.get(str(n))
        if raw is None:
            return None
        r = self.header["r"]
        try:
            p = from_json(raw, cap=r)
            if r is None and p.eval_at_one() != math.factorial(n):
                raise ValueError("total mass is not n!")
            if r is not None and p.eval_at_one() > math.factorial(n):
                raise ValueError("total mass exceeds n!")
        except (TypeError, ValueError) as exc:
            log.warning("ignoring corrupt cache entry n=%s in %s: %s", n, self.path, exc)
            del self.entries[str(n)]
            return None
        return p

    def put(self, n: int, p: QPoly) -> None:
        self.entries[str(n)] = to_json(p)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        payload = json.dumps({"header": self.header, "entries": self.entries}, sort_keys=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(payload)
        os.replace(tmp, self.path)


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "wilfcount"


class Runner:
    """Shared state for one CLI invocation: engine, cache, output."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        limits = None if args.no_guard else Engine().exact_limits
        self.engine = Engine(
            threads=args.threads,
            max_states=args.max_states,
            max_seconds=args.max_seconds,
            exact_limits=limits,
        )
        self.cache_dir = None
        self._caches: dict[tuple, ResultCache] = {}
        if args.cache or args.cache_dir:
            self.cache_dir = Path(args.cache_dir) if args.cache_dir else default_cache_dir()

    def _cache(self, k: int, mode: str, r: int | None) -> ResultCache | None:
        if self.cache_dir is None:
            return None
        key = (k, mode, r)
        if key not in self._caches:
            self._caches[key] = ResultCache(self.cache_dir, k, mode, r)
        return self._caches[key]

    def poly(self, k: int, n: int, mode: str, r: int | None = None) -> QPoly:
        cache = self._cache(k, mode, r)
        if cache is not None:
            hit = cache.get(n)
            if hit is not None:
                return hit
        if mode == "brute":
            limit = None if self.args.no_guard else oracle.BRUTE_FORCE_LIMIT
            p = oracle.distribution_brute(oracle.increasing(k), n, limit=limit)
        elif mode == "exact":
            p = self.engine.evaluate(initial_state(n, k), EngineConfig.exact(k))
        else:
            p = self.engine.evaluate(initial_state(n, k), EngineConfig.truncated(k, r))
        if cache is not None:
            cache.put(n, p)
        return p

    def emit(self, text: str) -> None:
        if not text.endswith("\n"):
            text += "\n"
        if self.args.out:
            Path(self.args.out).write_text(text)
        else:
            sys.stdout.write(text)


def _poly_json(k: int, n: int, mode: str, r: int | None, p: QPoly) -> dict:
    out: dict = {"k": k, "n": n, "mode": mode}
    if r is not None:
        out["r"] = r
    out["poly"] = to_json(p)
    return out


def cmd_dist(run: Runner) -> int:
    a = run.args
    if a.mode == "truncated" and a.r is None:
        raise UsageError("--mode truncated requires --r")
    if a.mode != "truncated" and a.r is not None:
        raise UsageError("--r is only valid with --mode truncated")
    if a.mode != "brute" and a.k < 3:
        raise UsageError("engine modes need k >= 3")
    results = [(n, run.poly(a.k, n, a.mode, a.r)) for n in a.n]
    if a.format == "json":
        objs = [_poly_json(a.k, n, a.mode, a.r, p) for n, p in results]
        run.emit(json.dumps(objs[0] if len(objs) == 1 else objs))
    elif a.format == "bfile":
        raise UsageError("bfile output is only available for counts")
    else:
        run.emit("\n".join(render(p) for _, p in results))
    return EXIT_OK


def cmd_counts(run: Runner) -> int:
    a = run.args
    if a.k < 3:
        raise UsageError("engine modes need k >= 3")
    terms = [(n, run.poly(a.k, n, "truncated", a.r).coeff(a.r)) for n in a.n]
    if a.format == "bfile":
        run.emit("\n".join(f"{n} {v}" for n, v in terms))
    elif a.format == "json":
        run.emit(json.dumps({
            "k": a.k, "r": a.r, "mode": "truncated",
            "terms": [[str(n), str(v)] for n, v in terms],
        }))
    else:
        run.emit("\n".join(str(v) for _, v in terms))
    return EXIT_OK


def cmd_verify(run: Runner) -> int:
    a = run.args
    if a.k != 3:
        raise UsageError("closed forms exist only for the pattern 123 (k=3)")
    bad = [r for r in a.r if r not in formulas.CLOSED_FORMS]
    if bad:
        raise UsageError(f"no closed form for r in {bad}; available 0..7")
    report = formulas.verify_formulas(a.r, a.n, engine=run.engine)
    if a.format == "json":
        run.emit(json.dumps(report.to_json()))
    else:
        run.emit(report.render())
    return EXIT_OK if report.all_match else EXIT_MISMATCH


def cmd_oracle(run: Runner) -> int:
    a = run.args
    if a.k < 3:
        raise UsageError("engine modes need k >= 3")
    rows = []
    for n in a.n:
        exact = run.poly(a.k, n, "exact")
        brute = run.poly(a.k, n, "brute")
        rows.append((n, exact == brute, exact, brute))
    ok = all(match for _, match, _, _ in rows)
    if a.format == "json":
        run.emit(json.dumps({
            "k": a.k,
            "all_match": ok,
            "rows": [
                {"n": n, "match": m, "engine": to_json(e), "brute": to_json(b)}
                for n, m, e, b in rows
            ],
        }))
    else:
        lines = []
        for n, m, e, b in rows:
            if m:
                lines.append(f"k={a.k} n={n} match {render(e)}")
            else:
                lines.append(f"k={a.k} n={n} MISMATCH engine={render(e)} brute={render(b)}")
        lines.append("all match" if ok else "mismatch found")
        run.emit("\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_moments(run: Runner) -> int:
    a = run.args
    if a.k < 3:
        raise UsageError("engine modes need k >= 3")
    if a.order < 1:
        raise UsageError("--order must be at least 1")
    reports = [analysis.moment_report(run.poly(a.k, n, "exact"), a.k, n, a.order) for n in a.n]
    if a.format == "json":
        objs = [rep.to_json() for rep in reports]
        run.emit(json.dumps(objs[0] if len(objs) == 1 else objs))
    else:
        run.emit("\n".join(rep.render() for rep in reports))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    pat = common.add_mutually_exclusive_group()
    pat.add_argument("--k", type=int, help="pattern length; the pattern is 1..k")
    pat.add_argument("--pattern", type=pattern_to_k, dest="k_from_pattern",
                     help="increasing pattern such as 123 or 1234 (alias for --k)")
    common.add_argument("--format", choices=("text", "json", "bfile"), default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--threads", type=int, default=1, help="worker threads per level")
    common.add_argument("--max-states", type=int, help="abort after visiting this many states")
    common.add_argument("--max-seconds", type=float, help="abort after this many seconds")
    common.add_argument("--no-guard", action="store_true",
                        help="lift the exact-mode and brute-force size guards")
    common.add_argument("--cache", action="store_true",
                        help=f"reuse results from the on-disk cache (directory from ${CACHE_ENV})")
    common.add_argument("--cache-dir", help="cache directory (implies --cache)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="wilfcount", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", parents=[common], help="full or truncated distribution polynomial")
    p.add_argument("--n", type=parse_range, required=True)
    p.add_argument("--mode", choices=("exact", "truncated", "brute"), default="exact")
    p.add_argument("--r", type=int)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("counts", parents=[common], help="permutations with exactly r occurrences")
    p.add_argument("--n", type=parse_range, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("verify", parents=[common], help="closed forms for 123 against the engine")
    p.add_argument("--n", type=parse_range, required=True)
    p.add_argument("--r", type=parse_range, required=True)
    p.set_defaults(func=cmd_verify, k=None)

    p = sub.add_parser("oracle", parents=[common], help="engine against brute force over S_n")
    p.add_argument("--n", type=parse_range, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("moments", parents=[common], help="mean and centered moments")
    p.add_argument("--n", type=parse_range, required=True)
    p.add_argument("--order", type=int, default=6, help="highest moment order")
    p.set_defaults(func=cmd_moments)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if args.k_from_pattern is not None:
        args.k = args.k_from_pattern
    if args.k is None:
        if args.command == "verify":
            args.k = 3
        else:
            parser.error("one of --k or --pattern is required")
    r = getattr(args, "r", None)
    if isinstance(r, int) and r < 0:
        parser.error("--r must be nonnegative")
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    if any(n < 1 for n in args.n):
        parser.error("--n values must be positive")
    try:
        return args.func(Runner(args))
    except UsageError as exc:
        parser.error(str(exc))
    except ResourceLimitError as exc:
        print(f"wilfcount: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
