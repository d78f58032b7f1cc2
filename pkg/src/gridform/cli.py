"""Command-line front end: run, analyze, gen, fuzz."""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path
from typing import Iterable, Optional, TextIO

from . import scheduler, verify
from .canonical import (
    canonical_frames,
    corner_strings,
    head_tail,
    is_asymmetric,
    to_frame_coords,
)
from .geometry import Point
from .sampling import random_asymmetric_config, random_points
from .conditions import classify_phase, evaluate_conditions
from .target import canonicalize_target

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_LIMIT = 2
EXIT_FAULT = 3

_OUTCOME_EXIT = {"FORMED": EXIT_OK, "LIMIT_EXCEEDED": EXIT_LIMIT, "FAULT": EXIT_FAULT}


class CliError(Exception):
    pass


def parse_config(text: str, source: str = "<config>") -> frozenset:
    """Parse a configuration file: '#' comments, one 'x y' pair per line."""
    points = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise CliError(f"{source}:{lineno}: expected 'x y', got {raw!r}")
        try:
            p = (int(parts[0]), int(parts[1]))
        except ValueError:
            raise CliError(f"{source}:{lineno}: non-integer coordinate in {raw!r}")
        if p in points:
            raise CliError(f"{source}:{lineno}: duplicate point {p}")
        points.add(p)
    if not points:
        raise CliError(f"{source}: no points")
    return frozenset(points)


def format_config(points: Iterable[Point]) -> str:
    return "".join(f"{x} {y}\n" for x, y in sorted(points))


def load_config(path: str) -> frozenset:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(str(exc))
    return parse_config(text, source=path)


def write_trace(trace: Iterable[scheduler.Event], out: TextIO):
    for ev in trace:
        rec = {"index": ev.index, "robot": ev.robot, "kind": ev.kind,
               "from": list(ev.pos_before)}
        if ev.pos_after is not None:
            rec["to"] = list(ev.pos_after)
        if ev.phase is not None:
            rec["phase"] = ev.phase
        out.write(json.dumps(rec) + "\n")


def read_trace(lines: Iterable[str]) -> list[scheduler.Event]:
    events = []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        events.append(scheduler.Event(
            index=rec["index"], robot=rec["robot"], kind=rec["kind"],
            pos_before=tuple(rec["from"]),
            pos_after=tuple(rec["to"]) if "to" in rec else None,
            phase=rec.get("phase"),
        ))
    return events


def render_ascii(points: frozenset, head: Optional[Point] = None,
                 tail: Optional[Point] = None,
                 targets: Optional[frozenset] = None) -> str:
    """Diagnostic grid picture: robots 'R', head 'H', tail 'T', target 'x'."""
    cells = set(points) | set(targets or ())
    xs = [p[0] for p in cells]
    ys = [p[1] for p in cells]
    rows = []
    for y in range(max(ys), min(ys) - 1, -1):
        row = []
        for x in range(min(xs), max(xs) + 1):
            p = (x, y)
            if p == head:
                row.append("H")
            elif p == tail:
                row.append("T")
            elif p in points:
                row.append("R")
            elif targets and p in targets:
                row.append("x")
            else:
                row.append("·")
        rows.append(" ".join(row))
    return "\n".join(rows)


def _verdicts(outcome: scheduler.Outcome, target) -> dict:
    checks = {
        "collision_free": verify.check_collision_free(outcome.trace).passed,
        "phase_transitions": verify.check_phase_transitions(outcome.trace).passed,
    }
    if outcome.kind == "FORMED":
        checks["formed"] = verify.check_formed(outcome.final, target).passed
    return checks


def cmd_run(args) -> int:
    config = load_config(args.config)
    raw_target = load_config(args.target)
    if len(config) != len(raw_target):
        raise CliError(
            f"{len(config)} robots but {len(raw_target)} target points"
        )
    target = canonicalize_target(raw_target)
    fairness = args.fairness if args.fairness else 4 * len(config)
    adversary = scheduler.make_adversary(args.adversary, fairness, args.seed)
    t0 = time.perf_counter()
    outcome = scheduler.run(config, target, adversary, max_events=args.max_events)
    elapsed = time.perf_counter() - t0
    if args.trace:
        with open(args.trace, "w") as fh:
            write_trace(outcome.trace, fh)
    report = {
        "outcome": outcome.kind,
        "fault": outcome.fault,
        "events": outcome.events_used,
        "final": sorted(list(p) for p in outcome.final),
        "verdicts": _verdicts(outcome, target),
        "adversary": args.adversary,
        "seed": args.seed,
        "fairness_window": fairness,
        "wall_time_s": round(elapsed, 6),
    }
    print(json.dumps(report, indent=2))
    if args.render:
        print(render_ascii(outcome.final, targets=target.points))
    return _OUTCOME_EXIT[outcome.kind]


def _dir_name(d: Optional[Point]) -> str:
    names = {(1, 0): "+x", (-1, 0): "-x", (0, 1): "+y", (0, -1): "-y", None: "?"}
    return names.get(d, str(d))


def cmd_analyze(args) -> int:
    config = load_config(args.config)
    strings = corner_strings(config)
    print(f"points: {len(config)}")
    for cs in strings:
        print(f"corner {cs.corner} short {_dir_name(cs.short_dir)} "
              f"long {_dir_name(cs.long_dir)}: {cs.bits}")
    best = max(cs.bits for cs in strings)
    winners = [cs for cs in strings if cs.bits == best]
    print(f"maximal string: {best}")
    if is_asymmetric(config):
        print("asymmetric: yes")
    else:
        dupes = sorted({cs.bits for cs in strings
                        if sum(1 for o in strings if o.bits == cs.bits) > 1})
        print(f"symmetric (duplicate strings: {', '.join(dupes)})")
    frames = canonical_frames(config)
    for f in frames:
        print(f"frame: origin {f.origin} x_dir {_dir_name(f.x_dir)} "
              f"y_dir {_dir_name(f.y_dir) if f.y_dir else 'UNDETERMINED'}")
    if len(config) >= 2:
        head, tail = head_tail(config, frames[0])
        print(f"head: {head}")
        print(f"tail: {tail}")
    if args.target:
        raw_target = load_config(args.target)
        if len(raw_target) != len(config):
            raise CliError("configuration and target sizes differ")
        target = canonicalize_target(raw_target)
        if len(frames) == 1 and len(config) >= 2:
            cf = to_frame_coords(config, frames[0])
            cv = evaluate_conditions(cf, target)
            for i in range(9):
                print(f"C{i}: {getattr(cv, f'c{i}')}")
            print(f"m={cv.m} n={cv.n} M={cv.M} N={cv.N} H={cv.H} V={cv.V}")
            print(f"phase: {classify_phase(cv)}")
        else:
            print("phase: n/a (symmetric configuration)")
    if args.render:
        h, t = (head, tail) if len(config) >= 2 else (None, None)
        print(render_ascii(config, head=h, tail=t))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.k < 3:
        raise CliError("--k must be at least 3 (smaller swarms are symmetric)")
    rng = random.Random(args.seed)
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        c = random_asymmetric_config(args.k, args.box, rng)
        path = outdir / f"config_k{args.k}_s{args.seed}_{i:03d}.txt"
        path.write_text(f"# asymmetric, k={args.k}, box={args.box}\n"
                        + format_config(c))
        print(path)
    return EXIT_OK


def cmd_fuzz(args) -> int:
    if args.k_min < 3:
        raise CliError("k range must start at 3 or above")
    rng = random.Random(args.seed)
    kinds = ["random", "round_robin", "max_stale"]
    failures = []
    results = []
    for i in range(args.runs):
        k = rng.randint(args.k_min, args.k_max)
        config = random_asymmetric_config(k, args.box, rng)
        target = canonicalize_target(random_points(k, args.box, rng))
        kind = kinds[i % len(kinds)]
        adversary = scheduler.make_adversary(kind, 4 * k, rng.randrange(2**32))
        outcome = scheduler.run(config, target, adversary,
                                max_events=args.max_events)
        checks = _verdicts(outcome, target)
        ok = outcome.kind == "FORMED" and all(checks.values())
        results.append(ok)
        if not ok:
            failures.append({
                "run": i, "k": k, "adversary": kind,
                "outcome": outcome.kind, "fault": outcome.fault,
                "verdicts": checks,
                "config": sorted(list(p) for p in config),
                "target": sorted(list(p) for p in target.points),
            })
    print(json.dumps({
        "runs": args.runs,
        "formed": sum(results),
        "failures": failures,
    }, indent=2))
    return EXIT_OK if not failures else EXIT_FAULT


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gridform",
                description="Pattern formation for oblivious robots on the grid")
    sub = p.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("run", help="simulate one run")
    pr.add_argument("--config", required=True)
    pr.add_argument("--target", required=True)
    pr.add_argument("--adversary", default="random",
                    choices=["random", "roundrobin", "round_robin", "stale",
                             "max_stale"])
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--fairness", type=int, default=0,
                    help="fairness window W (default 4k)")
    pr.add_argument("--max-events", type=int, default=100_000)
    pr.add_argument("--trace", help="write the event trace to this file")
    pr.add_argument("--render", action="store_true")
    pr.set_defaults(func=cmd_run)

    pa = sub.add_parser("analyze", help="print strings, frames, conditions")
    pa.add_argument("--config", required=True)
    pa.add_argument("--target")
    pa.add_argument("--render", action="store_true")
    pa.set_defaults(func=cmd_analyze)

    pg = sub.add_parser("gen", help="generate asymmetric configurations")
    pg.add_argument("--k", type=int, required=True)
    pg.add_argument("--box", type=int, default=12)
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("--count", type=int, default=1)
    pg.add_argument("--out-dir", default=".")
    pg.set_defaults(func=cmd_gen)

    pf = sub.add_parser("fuzz", help="batch random end-to-end runs")
    pf.add_argument("--runs", type=int, required=True)
    pf.add_argument("--k-range", default="3..8",
                    help="inclusive range, e.g. 3..12")
    pf.add_argument("--box", type=int, default=12)
    pf.add_argument("--seed", type=int, default=0)
    pf.add_argument("--max-events", type=int, default=100_000)
    pf.set_defaults(func=cmd_fuzz)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "fuzz":
        try:
            lo, hi = args.k_range.split("..")
            args.k_min, args.k_max = int(lo), int(hi)
        except ValueError:
            print(f"error: bad --k-range {args.k_range!r}", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
