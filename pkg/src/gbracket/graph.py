"""Marked graphs and their rewriting operations.

A marked graph is a simple undirected graph in which every vertex carries two
independent flags (a loop flag and a mark flag), together with a count of
free loops.  Free loops are empty connected components: they interact with
nothing, but multiply bracket polynomials by d.  Loops are flags rather than
adjacency entries, so the adjacency relation itself is irreflexive.

Text format (whitespace-insensitive, groups separated by "/"):

    <n> <free_loops> / <id> <L|-> <M|-> ... / e <id> <id> ...

with one vertex group per vertex and one ``e`` group per edge, e.g.
``2 0 / v1 L - / v2 - M / e v1 v2``.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

from .gf2 import Gf2Matrix

_ID_RE = re.compile(r"^[A-Za-z0-9]+$")


class ParseError(ValueError):
    """Malformed textual input; carries 1-based line/column of the problem."""

    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    last_nl = text.rfind("\n", 0, offset)
    return line, offset - last_nl


def _pair(a: str, b: str) -> frozenset[str]:
    return frozenset((a, b))


class MarkedGraph:
    """Immutable marked graph; every operation returns a new graph."""

    __slots__ = ("vertices", "looped", "marked", "free_loops", "_adj", "_edges")

    def __init__(
        self,
        vertices: Iterable[str] = (),
        edges: Iterable[Iterable[str]] = (),
        looped: Iterable[str] = (),
        marked: Iterable[str] = (),
        free_loops: int = 0,
    ):
        verts = tuple(vertices)
        vset = set(verts)
        if len(vset) != len(verts):
            raise ValueError("duplicate vertex id")
        for v in verts:
            if not _ID_RE.match(v):
                raise ValueError(f"vertex id {v!r} is not alphanumeric")
        if free_loops < 0:
            raise ValueError("free loop count must be non-negative")
        looped = frozenset(looped)
        marked = frozenset(marked)
        for v in looped | marked:
            if v not in vset:
                raise ValueError(f"flag on unknown vertex {v!r}")
        edge_set = set()
        for e in edges:
            a, b = tuple(e)
            if a == b:
                raise ValueError(f"self-edge at {a!r}; loops are flags, not edges")
            if a not in vset or b not in vset:
                raise ValueError(f"edge ({a!r}, {b!r}) has an unknown endpoint")
            edge_set.add(_pair(a, b))
        adj: dict[str, set[str]] = {v: set() for v in verts}
        for e in edge_set:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "looped", looped)
        object.__setattr__(self, "marked", marked)
        object.__setattr__(self, "free_loops", free_loops)
        object.__setattr__(self, "_edges", frozenset(edge_set))
        object.__setattr__(self, "_adj", {v: frozenset(nb) for v, nb in adj.items()})

    def __setattr__(self, name, value):
        raise AttributeError("MarkedGraph is immutable")

    # -- inspection ---------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_set(self) -> frozenset[frozenset[str]]:
        return self._edges

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self._edges)

    def neighbors(self, v: str) -> frozenset[str]:
        self._require_vertex(v)
        return self._adj[v]

    def has_edge(self, a: str, b: str) -> bool:
        return _pair(a, b) in self._edges

    def is_looped(self, v: str) -> bool:
        self._require_vertex(v)
        return v in self.looped

    def is_marked(self, v: str) -> bool:
        self._require_vertex(v)
        return v in self.marked

    def _require_vertex(self, v: str) -> None:
        if v not in self._adj:
            raise ValueError(f"unknown vertex id {v!r}")

    def structural_key(self):
        """Order-insensitive identity; equal graphs share the key."""
        return (
            frozenset(self.vertices),
            self.looped,
            self.marked,
            self._edges,
            self.free_loops,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MarkedGraph):
            return NotImplemented
        return self.structural_key() == other.structural_key()

    def __hash__(self) -> int:
        return hash(self.structural_key())

    def __repr__(self) -> str:
        return f"MarkedGraph({self.serialize()!r})"

    # -- matrices ------------------------------------------------------------

    def adjacency_matrix(self) -> Gf2Matrix:
        """Boolean adjacency matrix: diagonal 1 at loops, symmetric off-diagonal."""
        n = self.vertex_count
        pos = {v: i for i, v in enumerate(self.vertices)}
        data = []
        for v in self.vertices:
            row = sum(1 << pos[u] for u in self._adj[v])
            if v in self.looped:
                row |= 1 << pos[v]
            data.append(row)
        return Gf2Matrix(n, n, data)

    def restricted_matrix(self, subset: Iterable[str]) -> Gf2Matrix:
        """Adjacency plus the diagonal indicator of ``subset``, with the row
        and column of every marked vertex whose adjusted diagonal entry is 0
        removed.  Survivors keep vertex order."""
        chosen = set(subset)
        for v in chosen:
            self._require_vertex(v)
        keep = []
        for v in self.vertices:
            diag = (v in self.looped) ^ (v in chosen)
            if v in self.marked and not diag:
                continue
            keep.append(v)
        pos = {v: i for i, v in enumerate(keep)}
        data = []
        for v in keep:
            row = sum(1 << pos[u] for u in self._adj[v] if u in pos)
            if (v in self.looped) ^ (v in chosen):
                row |= 1 << pos[v]
            data.append(row)
        return Gf2Matrix(len(keep), len(keep), data)

    # -- rewriting operations -------------------------------------------------

    def _rebuild(self, *, vertices=None, edges=None, looped=None, marked=None,
                 free_loops=None) -> "MarkedGraph":
        return MarkedGraph(
            self.vertices if vertices is None else vertices,
            self._edges if edges is None else edges,
            self.looped if looped is None else looped,
            self.marked if marked is None else marked,
            self.free_loops if free_loops is None else free_loops,
        )

    def local_complement(self, v: str) -> "MarkedGraph":
        """Toggle every edge between two neighbors of v and the loop flag of
        every neighbor of v.  Edges at v, marks and free loops are untouched."""
        self._require_vertex(v)
        nb = sorted(self._adj[v])
        edges = set(self._edges)
        for i, x in enumerate(nb):
            for y in nb[i + 1:]:
                edges ^= {_pair(x, y)}
        looped = self.looped ^ frozenset(nb)
        return self._rebuild(edges=edges, looped=looped)

    def pivot(self, v: str, w: str) -> "MarkedGraph":
        """Toggle adjacency between outside neighbors of v and w that are not
        common neighbors of both.  Requires v and w adjacent; loops, marks and
        edges at v, w are untouched."""
        self._require_vertex(v)
        self._require_vertex(w)
        if v == w or not self.has_edge(v, w):
            raise ValueError(f"pivot requires adjacent distinct vertices, got {v!r}, {w!r}")
        nv = self._adj[v] - {w}
        nw = self._adj[w] - {v}
        both = nv & nw
        only_v = nv - both
        only_w = nw - both
        edges = set(self._edges)
        for x in only_v:
            for y in only_w:
                edges ^= {_pair(x, y)}
            for y in both:
                edges ^= {_pair(x, y)}
        for x in only_w:
            for y in both:
                edges ^= {_pair(x, y)}
        return self._rebuild(edges=edges)

    def marked_pivot(self, v: str, w: str) -> "MarkedGraph":
        """Pivot at (v, w), then toggle the marks of v and w and exchange
        their neighbor sets (the edge vw survives the exchange)."""
        g = self.pivot(v, w)
        nv = g._adj[v] - {w}
        nw = g._adj[w] - {v}
        edges = set(g._edges)
        for x in nv:
            edges.discard(_pair(v, x))
        for y in nw:
            edges.discard(_pair(w, y))
        for x in nv:
            edges.add(_pair(w, x))
        for y in nw:
            edges.add(_pair(v, y))
        marked = g.marked ^ {v, w}
        return g._rebuild(edges=edges, marked=marked)

    def toggle_all_loops(self) -> "MarkedGraph":
        return self._rebuild(looped=frozenset(self.vertices) - self.looped)

    def disjoint_union(self, other: "MarkedGraph") -> "MarkedGraph":
        overlap = set(self.vertices) & set(other.vertices)
        if overlap:
            raise ValueError(f"vertex ids shared between operands: {sorted(overlap)}")
        return MarkedGraph(
            self.vertices + other.vertices,
            list(self._edges) + list(other._edges),
            self.looped | other.looped,
            self.marked | other.marked,
            self.free_loops + other.free_loops,
        )

    def delete_vertex(self, v: str) -> "MarkedGraph":
        self._require_vertex(v)
        return MarkedGraph(
            tuple(u for u in self.vertices if u != v),
            (e for e in self._edges if v not in e),
            self.looped - {v},
            self.marked - {v},
            self.free_loops,
        )

    def delete_loop(self, v: str) -> "MarkedGraph":
        self._require_vertex(v)
        if v not in self.looped:
            raise ValueError(f"vertex {v!r} has no loop to delete")
        return self._rebuild(looped=self.looped - {v})

    def add_free_loop(self, count: int = 1) -> "MarkedGraph":
        if count < 0:
            raise ValueError("free loop count must be non-negative")
        return self._rebuild(free_loops=self.free_loops + count)

    def add_vertex(self, v: str, looped: bool = False, marked: bool = False) -> "MarkedGraph":
        if v in self._adj:
            raise ValueError(f"vertex id {v!r} already present")
        return MarkedGraph(
            self.vertices + (v,),
            self._edges,
            self.looped | ({v} if looped else set()),
            self.marked | ({v} if marked else set()),
            self.free_loops,
        )

    def remove_edges(self, pairs: Iterable[tuple[str, str]]) -> "MarkedGraph":
        edges = set(self._edges)
        for a, b in pairs:
            e = _pair(a, b)
            if e not in edges:
                raise ValueError(f"edge ({a!r}, {b!r}) not present")
            edges.remove(e)
        return self._rebuild(edges=edges)

    # -- text form -------------------------------------------------------------

    def serialize(self) -> str:
        groups = [f"{self.vertex_count} {self.free_loops}"]
        for v in self.vertices:
            loop = "L" if v in self.looped else "-"
            mark = "M" if v in self.marked else "-"
            groups.append(f"{v} {loop} {mark}")
        for a, b in self.sorted_edges():
            groups.append(f"e {a} {b}")
        if len(groups) == 1:
            return groups[0] + " /"
        return " / ".join(groups)


def parse_graph(text: str) -> MarkedGraph:
    """Parse the textual marked-graph format; inverse of ``serialize``."""
    groups: list[tuple[list[str], int]] = []
    offset = 0
    for chunk in text.split("/"):
        tokens = chunk.split()
        groups.append((tokens, offset))
        offset += len(chunk) + 1

    def err(msg: str, at: int) -> ParseError:
        line, col = _line_col(text, min(at, max(len(text) - 1, 0)))
        return ParseError(msg, line, col)

    groups = [(t, o) for t, o in groups if t]
    if not groups:
        raise err("empty input, expected '<n> <free_loops>' header", 0)
    header, header_at = groups[0]
    if len(header) != 2:
        raise err(f"malformed header {' '.join(header)!r}, expected '<n> <free_loops>'", header_at)
    try:
        n, phi = int(header[0]), int(header[1])
    except ValueError:
        raise err(f"malformed header {' '.join(header)!r}: counts must be integers", header_at)
    if n < 0 or phi < 0:
        raise err("header counts must be non-negative", header_at)
    if len(groups) - 1 < n:
        raise err(f"header promises {n} vertices but only {len(groups) - 1} groups follow", header_at)

    vertices: list[str] = []
    looped: list[str] = []
    marked: list[str] = []
    for tokens, at in groups[1:1 + n]:
        if len(tokens) != 3:
            raise err(f"malformed vertex group {' '.join(tokens)!r}, expected '<id> <L|-> <M|->'", at)
        vid, loop, mark = tokens
        if not _ID_RE.match(vid):
            raise err(f"vertex id {vid!r} is not alphanumeric", at)
        if vid in vertices:
            raise err(f"duplicate vertex id {vid!r}", at)
        if loop not in ("L", "-") or mark not in ("M", "-"):
            raise err(f"bad flags for vertex {vid!r}: want 'L' or '-' then 'M' or '-'", at)
        vertices.append(vid)
        if loop == "L":
            looped.append(vid)
        if mark == "M":
            marked.append(vid)

    edges: list[tuple[str, str]] = []
    seen = set()
    for tokens, at in groups[1 + n:]:
        if len(tokens) != 3 or tokens[0] != "e":
            raise err(f"malformed edge group {' '.join(tokens)!r}, expected 'e <id> <id>'", at)
        _, a, b = tokens
        if a not in vertices:
            raise err(f"edge endpoint {a!r} is not a declared vertex", at)
        if b not in vertices:
            raise err(f"edge endpoint {b!r} is not a declared vertex", at)
        if a == b:
            raise err(f"self-edge at {a!r}; loops are vertex flags, not edges", at)
        key = _pair(a, b)
        if key in seen:
            raise err(f"duplicate edge ({a!r}, {b!r})", at)
        seen.add(key)
        edges.append((a, b))

    return MarkedGraph(vertices, edges, looped, marked, phi)


def enumerate_vertex_subsets(g: MarkedGraph) -> Iterator[frozenset[str]]:
    """All subsets of V(G) in binary counting order over vertex positions."""
    n = g.vertex_count
    for t in range(1 << n):
        yield frozenset(g.vertices[i] for i in range(n) if (t >> i) & 1)
