"""Link diagrams as signed Gauss codes and their transition systems.

A diagram is a set of oriented components, each a cyclic sequence of signed
crossing passes, plus a count of crossing-free components.  Forgetting signs
and over/under data leaves the universe: a 4-regular graph with one vertex
per crossing, made into a 2-in 2-out digraph by the component orientations.

At each crossing the four incident half-edges admit three pairings, named
relative to the link components:

* ``follow`` — each visit's in-edge pairs with the same visit's out-edge;
* ``cross`` — in-edge of one visit pairs with the out-edge of the other
  (orientation-consistent without following);
* ``flip`` — the two in-edges pair together, as do the two out-edges
  (orientation-inconsistent).

An Euler system is a flip-free assignment inducing exactly one directed
circuit per connected component of the universe; a circuit partition is any
assignment.  The first occurrence of a crossing in component reading order
is visit 1, which fixes the meaning of ``cross``.

Gauss code grammar: components separated by "|"; a component is either "o"
(crossing-free) or a comma-separated list of ``<id><sign>`` tokens with
alphanumeric id and sign "+" or "-"; whitespace is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .gf2 import Gf2Matrix
from .graph import MarkedGraph, ParseError, _line_col

FOLLOW = "follow"
CROSS = "cross"
FLIP = "flip"

_SIGN_CHARS = {"+": 1, "-": -1, "−": -1}


@dataclass(frozen=True)
class LinkDiagram:
    """Oriented signed Gauss code.

    ``components`` holds cyclic sequences of (crossing id, sign) passes with
    sign +1 or -1; crossing-free components are counted separately and never
    stored as empty sequences.
    """

    components: tuple[tuple[tuple[str, int], ...], ...]
    free_components: int = 0

    def __post_init__(self):
        if self.free_components < 0:
            raise ValueError("free component count must be non-negative")
        if not self.components and self.free_components == 0:
            raise ValueError("diagram needs at least one component")
        seen: dict[str, tuple[int, int]] = {}
        for comp in self.components:
            if not comp:
                raise ValueError("empty component sequence; use the free component count")
            for cid, sign in comp:
                if sign not in (1, -1):
                    raise ValueError(f"sign of crossing {cid!r} must be +1 or -1")
                count, prev_sign = seen.get(cid, (0, sign))
                if prev_sign != sign:
                    raise ValueError(f"crossing {cid!r} appears with inconsistent signs")
                seen[cid] = (count + 1, sign)
        for cid, (count, _) in seen.items():
            if count != 2:
                raise ValueError(f"crossing {cid!r} appears {count} times, expected exactly 2")

    @property
    def crossings(self) -> tuple[str, ...]:
        order = []
        seen = set()
        for comp in self.components:
            for cid, _ in comp:
                if cid not in seen:
                    seen.add(cid)
                    order.append(cid)
        return tuple(order)

    @property
    def signs(self) -> dict[str, int]:
        return {cid: sign for comp in self.components for cid, sign in comp}

    def serialize(self) -> str:
        parts = [
            ",".join(f"{cid}{'+' if sign > 0 else '-'}" for cid, sign in comp)
            for comp in self.components
        ]
        parts.extend("o" for _ in range(self.free_components))
        return "|".join(parts)


def parse_gauss(text: str) -> LinkDiagram:
    """Parse a signed Gauss code; inverse of ``LinkDiagram.serialize``."""

    def err(msg: str, at: int) -> ParseError:
        line, col = _line_col(text, min(at, max(len(text) - 1, 0)))
        return ParseError(msg, line, col)

    if not text.strip():
        raise err("empty Gauss code", 0)
    components: list[tuple[tuple[str, int], ...]] = []
    free = 0
    offset = 0
    for piece in text.split("|"):
        piece_at = offset
        offset += len(piece) + 1
        squeezed = "".join(piece.split())
        if not squeezed:
            raise err("empty component between '|' separators", piece_at)
        if squeezed == "o":
            free += 1
            continue
        passes = []
        tok_at = piece_at
        for raw in piece.split(","):
            token = "".join(raw.split())
            if not token:
                raise err("empty pass token", tok_at)
            if token == "o":
                raise err("'o' denotes a whole crossing-free component, not a pass", tok_at)
            cid, sign_char = token[:-1], token[-1]
            if sign_char not in _SIGN_CHARS:
                raise err(f"pass {token!r} does not end in a sign (+ or -)", tok_at)
            if not cid or not cid.isalnum():
                raise err(f"pass {token!r} needs an alphanumeric crossing id", tok_at)
            passes.append((cid, _SIGN_CHARS[sign_char]))
            tok_at += len(raw) + 1
        components.append(tuple(passes))
    try:
        return LinkDiagram(tuple(components), free)
    except ValueError as exc:
        raise err(str(exc), 0) from None


class Universe:
    """The 2-in 2-out digraph of a diagram, with half-edge bookkeeping.

    Edges connect consecutive passes within a component (cyclically) and are
    indexed by (component, position); edge k has a tail half-edge 2k and a
    head half-edge 2k+1.  Each crossing has two visits, each contributing an
    incoming and an outgoing half-edge.
    """

    __slots__ = ("words", "free_loops", "crossings", "visits", "halves",
                 "edge_count", "_offsets", "_half_cross", "_component_of")

    def __init__(self, words: tuple[tuple[str, ...], ...], free_loops: int):
        object.__setattr__(self, "words", words)
        object.__setattr__(self, "free_loops", free_loops)
        offsets = []
        total = 0
        for w in words:
            offsets.append(total)
            total += len(w)
        object.__setattr__(self, "_offsets", tuple(offsets))
        object.__setattr__(self, "edge_count", total)

        order: list[str] = []
        visits: dict[str, list[tuple[int, int]]] = {}
        for ci, w in enumerate(words):
            for p, cid in enumerate(w):
                visits.setdefault(cid, [])
                if not visits[cid]:
                    order.append(cid)
                visits[cid].append((ci, p))
        object.__setattr__(self, "crossings", tuple(order))
        object.__setattr__(self, "visits", {k: tuple(v) for k, v in visits.items()})

        halves: dict[str, tuple[int, int, int, int]] = {}
        for cid, (p1, p2) in self.visits.items():
            in1, out1 = self._pass_halves(p1)
            in2, out2 = self._pass_halves(p2)
            halves[cid] = (in1, out1, in2, out2)
        object.__setattr__(self, "halves", halves)

        half_cross: list[str] = [""] * (2 * total)
        for ci, w in enumerate(words):
            length = len(w)
            for p, cid in enumerate(w):
                e = offsets[ci] + p
                half_cross[2 * e] = cid
                half_cross[2 * e + 1] = w[(p + 1) % length]
        object.__setattr__(self, "_half_cross", tuple(half_cross))

        parent = {cid: cid for cid in order}

        def find(x: str) -> str:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for w in words:
            for p in range(len(w)):
                a, b = find(w[p]), find(w[(p + 1) % len(w)])
                if a != b:
                    parent[a] = b
        object.__setattr__(self, "_component_of", {cid: find(cid) for cid in order})

    def __setattr__(self, name, value):
        raise AttributeError("Universe is immutable")

    def _pass_halves(self, the_pass: tuple[int, int]) -> tuple[int, int]:
        ci, p = the_pass
        length = len(self.words[ci])
        out_edge = self._offsets[ci] + p
        in_edge = self._offsets[ci] + (p - 1) % length
        return 2 * in_edge + 1, 2 * out_edge

    def crossing_of_half(self, h: int) -> str:
        return self._half_cross[h]

    @property
    def crossing_component_count(self) -> int:
        return len(set(self._component_of.values()))

    def component_count(self) -> int:
        """c(U): connected components, each free loop counting as one."""
        return self.crossing_component_count + self.free_loops

    def same_component(self, v: str, w: str) -> bool:
        return self._component_of[v] == self._component_of[w]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Universe):
            return NotImplemented
        return (self.words, self.free_loops) == (other.words, other.free_loops)

    def __hash__(self) -> int:
        return hash((self.words, self.free_loops))


def build_universe(d: LinkDiagram) -> Universe:
    words = tuple(tuple(cid for cid, _ in comp) for comp in d.components)
    return Universe(words, d.free_components)


def _transitions_of(p) -> Mapping[str, str]:
    return p.transitions if hasattr(p, "transitions") else p


def trace_circuits(u: Universe, partition) -> tuple[tuple[str, ...], ...]:
    """Undirected closed walks induced by a transition assignment.

    Returns one cyclic crossing sequence per circuit (free loops excluded).
    Each traversal starts at the lowest-numbered unused edge in its forward
    direction, so output order and orientation are deterministic.
    """
    trans = _transitions_of(partition)
    partner: dict[int, int] = {}
    for cid in u.crossings:
        in1, out1, in2, out2 = u.halves[cid]
        t = trans[cid]
        if t == FOLLOW:
            pairs = ((in1, out1), (in2, out2))
        elif t == CROSS:
            pairs = ((in1, out2), (in2, out1))
        elif t == FLIP:
            pairs = ((in1, in2), (out1, out2))
        else:
            raise ValueError(f"unknown transition {t!r} at crossing {cid!r}")
        for a, b in pairs:
            partner[a] = b
            partner[b] = a

    seen = set()
    circuits = []
    for e in range(u.edge_count):
        start = 2 * e + 1
        if start in seen:
            continue
        seq = []
        h = start
        orbit = []
        while h not in seen:
            seen.add(h)
            orbit.append(h)
            seq.append(u.crossing_of_half(h))
            h = partner[h] ^ 1
        seen.update(x ^ 1 for x in orbit)
        circuits.append(tuple(seq))
    return tuple(circuits)


@dataclass(frozen=True)
class CircuitPartition:
    """A transition per crossing in {follow, cross, flip}; free loops are
    members of the induced partition implicitly."""

    transitions: Mapping[str, str]

    def __post_init__(self):
        for cid, t in self.transitions.items():
            if t not in (FOLLOW, CROSS, FLIP):
                raise ValueError(f"unknown transition {t!r} at crossing {cid!r}")


def count_circuits(u: Universe, partition) -> int:
    """Number of circuits induced by the partition, free loops included."""
    trans = _transitions_of(partition)
    if set(trans) != set(u.crossings):
        raise ValueError("partition must assign a transition to every crossing")
    return len(trace_circuits(u, trans)) + u.free_loops


class EulerSystem:
    """A flip-free transition assignment with one circuit per component.

    Crossings with the ``cross`` transition are exactly the marked crossings
    of the associated marked diagram.
    """

    __slots__ = ("universe", "transitions", "_circuits", "_inter")

    def __init__(self, universe: Universe, transitions: Mapping[str, str]):
        if set(transitions) != set(universe.crossings):
            raise ValueError("system must assign a transition to every crossing")
        for cid, t in transitions.items():
            if t not in (FOLLOW, CROSS):
                raise ValueError(
                    f"Euler systems are orientation-consistent; got {t!r} at {cid!r}"
                )
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "transitions", dict(transitions))
        circuits = trace_circuits(universe, transitions)
        if len(circuits) != universe.crossing_component_count:
            raise ValueError(
                f"{len(circuits)} circuits for {universe.crossing_component_count} "
                "connected components; not an Euler system"
            )
        object.__setattr__(self, "_circuits", circuits)
        object.__setattr__(self, "_inter", None)

    def __setattr__(self, name, value):
        raise AttributeError("EulerSystem is immutable")

    def circuits(self) -> tuple[tuple[str, ...], ...]:
        return self._circuits

    def marks(self) -> tuple[str, ...]:
        return tuple(sorted(cid for cid, t in self.transitions.items() if t == CROSS))

    def interlaced_pairs(self) -> frozenset[frozenset[str]]:
        if self._inter is None:
            object.__setattr__(self, "_inter", _interlaced_pairs(self._circuits))
        return self._inter

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EulerSystem):
            return NotImplemented
        return self.universe == other.universe and self.transitions == other.transitions

    def __hash__(self) -> int:
        return hash((self.universe, tuple(sorted(self.transitions.items()))))


def _interlaced_pairs(circuits: Iterable[tuple[str, ...]]) -> frozenset[frozenset[str]]:
    """Pairs whose four occurrences alternate v, w, v, w along one circuit."""
    out = set()
    for seq in circuits:
        positions: dict[str, list[int]] = {}
        for i, cid in enumerate(seq):
            positions.setdefault(cid, []).append(i)
        for v, w in combinations(sorted(positions), 2):
            i1, i2 = positions[v]
            j1, j2 = positions[w]
            if (i1 < j1 < i2) != (i1 < j2 < i2):
                out.add(frozenset((v, w)))
    return frozenset(out)


def euler_system(u: Universe) -> EulerSystem:
    """Deterministic Euler system: start from the link components and merge.

    All transitions start as ``follow`` (circuits are the link components);
    while some crossing with a ``follow`` transition has its two passages on
    distinct circuits, the smallest such crossing is switched to ``cross``,
    merging those circuits.  When no such crossing remains, every connected
    component carries a single circuit.
    """
    transitions = {cid: FOLLOW for cid in u.crossings}
    while True:
        circuits = trace_circuits(u, transitions)
        circuit_of_passage: dict[str, list[int]] = {}
        for i, seq in enumerate(circuits):
            for cid in seq:
                circuit_of_passage.setdefault(cid, []).append(i)
        candidate = None
        for cid in sorted(u.crossings):
            if transitions[cid] != FOLLOW:
                continue
            a, b = circuit_of_passage[cid]
            if a != b:
                candidate = cid
                break
        if candidate is None:
            return EulerSystem(u, transitions)
        transitions[candidate] = CROSS


def transpose(c: EulerSystem, v: str, w: str) -> EulerSystem:
    """Toggle the transitions of an interlaced pair between follow and cross.

    The result is again an Euler system for the same universe.
    """
    if frozenset((v, w)) not in c.interlaced_pairs():
        raise ValueError(f"crossings {v!r}, {w!r} are not interlaced in this system")
    flipped = dict(c.transitions)
    for x in (v, w):
        flipped[x] = CROSS if flipped[x] == FOLLOW else FOLLOW
    return EulerSystem(c.universe, flipped)


def interlacement_graph(c: EulerSystem) -> MarkedGraph:
    """Unmarked, unlooped interlacement skeleton with c(U) - 1 free loops."""
    u = c.universe
    pairs = c.interlaced_pairs()
    return MarkedGraph(
        u.crossings,
        [tuple(p) for p in pairs],
        free_loops=u.component_count() - 1,
    )


def looped_interlacement(d: LinkDiagram, c: EulerSystem) -> MarkedGraph:
    """The marked interlacement graph of a diagram: loops at negative
    crossings, marks where the system deviates from the link components."""
    u = build_universe(d)
    if c.universe != u:
        raise ValueError("Euler system was built on a different universe")
    skeleton = interlacement_graph(c)
    signs = d.signs
    return MarkedGraph(
        skeleton.vertices,
        [tuple(e) for e in skeleton.edge_set],
        looped=[cid for cid in skeleton.vertices if signs[cid] < 0],
        marked=[cid for cid, t in c.transitions.items() if t == CROSS],
        free_loops=skeleton.free_loops,
    )


def graph_transposition_consistency(d: LinkDiagram, c: EulerSystem, v: str, w: str) -> bool:
    """Check that transposing the system matches the marked pivot of the graph."""
    g = looped_interlacement(d, c)
    if not g.has_edge(v, w):
        raise ValueError(f"{v!r} and {w!r} are not adjacent in the interlacement graph")
    return looped_interlacement(d, transpose(c, v, w)) == g.marked_pivot(v, w)


def cohn_lempel_matrix(c: EulerSystem, p) -> Gf2Matrix:
    """Circuit-counting matrix of a partition relative to an Euler system.

    Start from the interlacement matrix of the system.  Where the partition
    follows the system, drop the row and column; where it is
    orientation-consistent without following, keep them unchanged; where it
    is orientation-inconsistent, set the diagonal entry to 1.  Its GF(2)
    nullity equals the number of circuits in the partition minus the number
    of connected components of the universe.
    """
    u = c.universe
    trans = _transitions_of(p)
    if set(trans) != set(u.crossings):
        raise ValueError("partition must assign a transition to every crossing")
    pairs = c.interlaced_pairs()
    keep = []
    inconsistent = set()
    for cid in u.crossings:
        t = trans[cid]
        if t == FLIP:
            keep.append(cid)
            inconsistent.add(cid)
        elif t != c.transitions[cid]:
            keep.append(cid)
    pos = {cid: i for i, cid in enumerate(keep)}
    data = []
    for cid in keep:
        row = 0
        for other in keep:
            if other != cid and frozenset((cid, other)) in pairs:
                row |= 1 << pos[other]
        if cid in inconsistent:
            row |= 1 << pos[cid]
        data.append(row)
    return Gf2Matrix(len(keep), len(keep), data)
