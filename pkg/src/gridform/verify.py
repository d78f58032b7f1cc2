"""Post-hoc trace checkers and brute-force oracles."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .algorithm import PathInstance, pf_on_path_step
from .canonical import brute_force_symmetries, is_asymmetric
from .geometry import Point, similar
from .scheduler import Event, LOOK, MOVE
from .target import TargetPattern


@dataclass
class Verdict:
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def flag(self, index: int, rule: str, detail: str):
        self.violations.append((index, rule, detail))


# Legal phase transitions; the 3 -> 1 edge is the only cycle and must
# still terminate.
PHASE_EDGES = {
    "P1": {"P2", "P3", "P4", "P5", "P6"},
    "P2": {"P3", "P4", "P5"},
    "P3": {"P4", "P1"},
    "P4": {"P5"},
    "P5": {"P6", "P7"},
    "P6": {"P7"},
    "P7": {"DONE"},
    "DONE": set(),
}


def check_collision_free(trace: Iterable[Event]) -> Verdict:
    """Replay the trace and flag any event after which two robots coincide."""
    v = Verdict()
    positions: dict[int, Point] = {}
    for ev in trace:
        if ev.kind not in (LOOK, MOVE):
            raise ValueError(f"malformed trace: unknown event kind {ev.kind!r}")
        known = positions.get(ev.robot)
        if known is None:
            if ev.pos_before in positions.values():
                v.flag(ev.index, "collision",
                       f"robot {ev.robot} starts on an occupied cell")
            positions[ev.robot] = ev.pos_before
        elif known != ev.pos_before:
            raise ValueError(
                f"malformed trace: robot {ev.robot} jumps at event {ev.index}"
            )
        if ev.kind == MOVE and ev.pos_after != ev.pos_before:
            others = {p for r, p in positions.items() if r != ev.robot}
            if ev.pos_after in others:
                v.flag(ev.index, "collision",
                       f"robot {ev.robot} moves onto an occupied cell")
            positions[ev.robot] = ev.pos_after
    return v


def check_formed(final: Iterable[Point], t: TargetPattern) -> Verdict:
    v = Verdict()
    if similar(final, t.points) is None:
        v.flag(-1, "formed", "final configuration is not similar to the target")
    return v


def check_phase_transitions(trace: Iterable[Event]) -> Verdict:
    """Phases observed at Look events must follow the transition diagram
    (stuttering collapsed)."""
    v = Verdict()
    prev = None
    for ev in trace:
        if ev.kind != LOOK or ev.phase is None:
            continue
        if prev is not None and ev.phase != prev:
            if ev.phase not in PHASE_EDGES.get(prev, set()):
                v.flag(ev.index, "phase-transition", f"{prev} -> {ev.phase}")
        prev = ev.phase
    return v


def back_edge_count(trace: Iterable[Event]) -> int:
    """How many times the phase sequence takes the 3 -> 1 back edge."""
    count = 0
    prev = None
    for ev in trace:
        if ev.kind != LOOK or ev.phase is None:
            continue
        if prev == "P3" and ev.phase == "P1":
            count += 1
        prev = ev.phase
    return count


@dataclass
class PathOracleResult:
    total_steps: int
    verdict: Verdict


def oracle_pf_on_path(p: PathInstance, max_orders: int = 6,
                      rng: Optional[random.Random] = None) -> PathOracleResult:
    """Sequentially simulate the path protocol under several activation
    orders; every robot must reach its target with no deadlock, no swaps,
    and exactly the sum of index distances in executed steps."""
    v = Verdict()
    k = len(p.robot_indices)
    expected = sum(
        abs(r - t) for r, t in zip(p.robot_indices, p.target_indices)
    )
    if k == 0:
        return PathOracleResult(0, v)
    if k <= 3:
        orders = list(itertools.permutations(range(k)))
    else:
        rng = rng or random.Random(0)
        orders = [tuple(rng.sample(range(k), k)) for _ in range(max_orders)]
    total = expected
    for order in orders:
        positions = list(p.robot_indices)
        steps = 0
        while positions != list(p.target_indices):
            progressed = False
            for i in order:
                inst = PathInstance(
                    p.cells, tuple(sorted(positions)), p.target_indices
                )
                nxt = pf_on_path_step(inst, positions[i])
                if nxt is not None:
                    positions[i] = nxt
                    steps += 1
                    progressed = True
                if sorted(positions) != positions:
                    v.flag(steps, "swap", f"order {order}: robots crossed")
                    return PathOracleResult(steps, v)
            if not progressed:
                # The protocol is deterministic: a full pass without a move
                # can never unblock.
                v.flag(steps, "deadlock", f"order {order}: no progress")
                return PathOracleResult(steps, v)
        if steps != expected:
            v.flag(steps, "step-count",
                   f"order {order}: {steps} steps, expected {expected}")
        total = steps
    return PathOracleResult(total, v)


def cross_check_asymmetry(c: Iterable[Point]) -> Verdict:
    """String-based asymmetry must agree with the brute-force oracle."""
    v = Verdict()
    by_strings = is_asymmetric(c)
    by_brute_force = not brute_force_symmetries(c)
    if by_strings != by_brute_force:
        v.flag(-1, "asymmetry",
               f"strings say {by_strings}, brute force says {by_brute_force}")
    return v
