"""Brute-force Kauffman state sum on diagrams.

Enumerates all 2^n smoothing states of a diagram, counts the closed curves
of each state by tracing the induced circuit partition, and sums
A^a B^b d^(c-1).  Deliberately naive: this is the independent referee for
the interlacement pipeline, so it shares no code path with the graph-side
bracket beyond the circuit tracer.

Smoothings are classified by crossing sign and component orientations alone
(over/under data never enters): at a positive crossing the A smoothing is
the orientation-consistent non-following transition and B is the
orientation-inconsistent one; at a negative crossing the roles swap.
Mirror images therefore exchange A and B.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from .bracket import bracket_nullity
from .diagram import (
    CROSS,
    FLIP,
    FOLLOW,
    CircuitPartition,
    EulerSystem,
    LinkDiagram,
    Universe,
    build_universe,
    euler_system,
    looped_interlacement,
    transpose,
)
from .poly import BracketPoly

DEFAULT_GUARD = 20


@dataclass(frozen=True)
class KauffmanState:
    """Choice of smoothing, "A" or "B", at every crossing."""

    smoothings: Mapping[str, str]

    def __post_init__(self):
        for cid, s in self.smoothings.items():
            if s not in ("A", "B"):
                raise ValueError(f"smoothing at {cid!r} must be 'A' or 'B'")


def state_to_partition(d: LinkDiagram, s: KauffmanState) -> CircuitPartition:
    """Transition system of a state: smoothings never follow the components."""
    signs = d.signs
    if set(s.smoothings) != set(signs):
        raise ValueError("state must choose a smoothing at every crossing")
    trans = {}
    for cid, sign in signs.items():
        if sign > 0:
            trans[cid] = CROSS if s.smoothings[cid] == "A" else FLIP
        else:
            trans[cid] = FLIP if s.smoothings[cid] == "A" else CROSS
    return CircuitPartition(trans)


def _count_orbits(u: Universe, partner: list[int]) -> int:
    seen = bytearray(2 * u.edge_count)
    orbits = 0
    for start in range(2 * u.edge_count):
        if seen[start]:
            continue
        orbits += 1
        h = start
        while not seen[h]:
            seen[h] = 1
            h = partner[h] ^ 1
    return orbits


def kauffman_state_sum(d: LinkDiagram, guard: int = DEFAULT_GUARD) -> BracketPoly:
    """Sum A^a(S) B^b(S) d^(c(S)-1) over all 2^n states.

    ``c(S)`` counts the closed curves of the smoothed diagram, including
    crossing-free components.  States are enumerated in binary counting
    order over crossings sorted by id (bit set = B smoothing); the order is
    irrelevant to the sum but fixes failure reports.
    """
    u = build_universe(d)
    order = sorted(u.crossings)
    n = len(order)
    if n > guard:
        raise ValueError(f"{n} crossings exceeds the enumeration guard ({guard})")
    signs = d.signs

    # Pairing tables per crossing: [0] = A smoothing, [1] = B smoothing.
    tables = []
    for cid in order:
        in1, out1, in2, out2 = u.halves[cid]
        consistent = ((in1, out2), (in2, out1))
        inconsistent = ((in1, in2), (out1, out2))
        if signs[cid] > 0:
            tables.append((consistent, inconsistent))
        else:
            tables.append((inconsistent, consistent))

    counts: dict[tuple[int, int], int] = {}
    partner = [0] * (2 * u.edge_count)
    for state in range(1 << n):
        for i in range(n):
            for a, b in tables[i][(state >> i) & 1]:
                partner[a] = b
                partner[b] = a
        curves = _count_orbits(u, partner) // 2 + u.free_loops
        key = (state.bit_count(), curves)
        counts[key] = counts.get(key, 0) + 1

    return BracketPoly({(n - b, b, c - 1): k for (b, c), k in counts.items()})


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerifyReport:
    diagram: str
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


def _random_transposed(c: EulerSystem, rng: random.Random, steps: int) -> EulerSystem:
    for _ in range(steps):
        pairs = sorted(tuple(sorted(p)) for p in c.interlaced_pairs())
        if not pairs:
            break
        v, w = pairs[rng.randrange(len(pairs))]
        c = transpose(c, v, w)
    return c


def verify_diagram(
    d: LinkDiagram,
    guard: int = DEFAULT_GUARD,
    transposed: int = 3,
    rng: random.Random | None = None,
) -> VerifyReport:
    """Certify that the interlacement pipeline reproduces the state sum.

    Computes the brute-force bracket once, then compares it against the
    marked-graph bracket of the interlacement graph for the default Euler
    system and ``transposed`` randomly transposed variants.  Failures are
    reported, not raised.
    """
    rng = rng if rng is not None else random.Random(0)
    expected = kauffman_state_sum(d, guard=guard)
    u = build_universe(d)
    base = euler_system(u)
    systems = [("default system", base)]
    for i in range(transposed):
        systems.append((f"transposed system {i + 1}", _random_transposed(base, rng, i + 1)))

    checks = []
    for name, system in systems:
        got = bracket_nullity(looped_interlacement(d, system))
        if got == expected:
            checks.append(CheckResult(f"state sum vs {name}", True))
        else:
            checks.append(
                CheckResult(
                    f"state sum vs {name}",
                    False,
                    f"state sum {expected} != graph bracket {got}",
                )
            )
    return VerifyReport(d.serialize(), tuple(checks))
