"""The marked-graph bracket polynomial, by state sum and by recursion.

Two independent engines compute the same invariant:

* :func:`bracket_nullity` sums A^(n-|T|) B^|T| d^nu(M_T) over all 2^n vertex
  subsets T, where M_T is the restricted GF(2) matrix of the graph, and
  multiplies by d^free_loops.
* :func:`bracket_recursive` eliminates vertices with local complements and
  pivots, preparing the graph with marked pivots so the elimination formulas
  apply, and terminates on edgeless graphs with a closed-form product.

Their agreement on every input is the central internal consistency check; a
mismatch raises :class:`EngineMismatchError`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import MarkedGraph
from .poly import BracketPoly, Laurent, jones_normalize, reduce_bracket

_A = BracketPoly.monomial(1, a=1)
_B = BracketPoly.monomial(1, b=1)
_A2 = BracketPoly.monomial(1, a=2)
_AB = BracketPoly.monomial(1, a=1, b=1)
_AINV_B = BracketPoly.monomial(1, a=-1, b=1)
# A - A^-1 B^2, the coefficient of the loop-removal rule.
_LOOP_COEFF = BracketPoly({(1, 0, 0): 1, (-1, 2, 0): -1})
_A_PLUS_B = BracketPoly({(1, 0, 0): 1, (0, 1, 0): 1})
_AD_PLUS_B = BracketPoly({(1, 0, 1): 1, (0, 1, 0): 1})
_A_PLUS_BD = BracketPoly({(1, 0, 0): 1, (0, 1, 1): 1})


class EngineMismatchError(RuntimeError):
    """The two bracket engines disagreed; indicates an implementation bug."""


def bracket_nullity(g: MarkedGraph) -> BracketPoly:
    """Exact 2^n-subset nullity state sum of the marked-graph bracket."""
    n = g.vertex_count
    pos = {v: i for i, v in enumerate(g.vertices)}
    adj = [0] * n
    for e in g.edge_set:
        a, b = tuple(e)
        adj[pos[a]] |= 1 << pos[b]
        adj[pos[b]] |= 1 << pos[a]
    loop_bits = sum(1 << pos[v] for v in g.looped)
    marked_bits = sum(1 << pos[v] for v in g.marked)
    full = (1 << n) - 1

    counts: dict[tuple[int, int], int] = {}
    for t in range(1 << n):
        diag = loop_bits ^ t
        keep = full & ~(marked_bits & ~diag)
        # Row-reduce the kept rows, masked to kept columns.
        pivots: list[int] = []
        lows: list[int] = []
        m = keep
        while m:
            bit = m & -m
            m ^= bit
            row = (adj[bit.bit_length() - 1] & keep) | (diag & bit)
            for i in range(len(pivots)):
                if row & lows[i]:
                    row ^= pivots[i]
            if row:
                pivots.append(row)
                lows.append(row & -row)
        nu = keep.bit_count() - len(pivots)
        key = (t.bit_count(), nu)
        counts[key] = counts.get(key, 0) + 1

    phi = g.free_loops
    return BracketPoly({(n - k, k, nu + phi): c for (k, nu), c in counts.items()})


def _first_adjacent_marked_pair(g: MarkedGraph) -> tuple[str, str] | None:
    best = None
    for v in sorted(g.marked):
        for w in sorted(g.neighbors(v) & g.marked):
            pair = (v, w) if v < w else (w, v)
            if best is None or pair < best:
                best = pair
        if best is not None and best[0] == v:
            break
    return best


def bracket_recursive(g: MarkedGraph) -> BracketPoly:
    """Bracket via the elimination recursion; equals ``bracket_nullity`` exactly.

    Dispatch at each node: pivot away adjacencies between marked vertices,
    then eliminate marked vertices, then loops, then edges; edgeless graphs
    get the closed form d^phi (A+B)^m (Ad+B)^n1 (A+Bd)^n2.  Choices are the
    lexicographically first eligible vertex or pair, so runs are
    deterministic.  Memoization is keyed on structural identity and never
    affects the result.
    """
    memo: dict[tuple, BracketPoly] = {}

    def rec(g: MarkedGraph) -> BracketPoly:
        key = g.structural_key()
        cached = memo.get(key)
        if cached is not None:
            return cached

        while (pair := _first_adjacent_marked_pair(g)) is not None:
            g = g.marked_pivot(*pair)

        if not g.edge_set:
            m = len(g.marked)
            n1 = sum(1 for v in g.vertices if v not in g.looped and v not in g.marked)
            n2 = sum(1 for v in g.vertices if v in g.looped and v not in g.marked)
            result = (_A_PLUS_B ** m) * (_AD_PLUS_B ** n1) * (_A_PLUS_BD ** n2)
            result = result.shift_d(g.free_loops)
        elif g.marked:
            v = min(g.marked)
            away = rec(g.delete_vertex(v))
            complemented = rec(g.local_complement(v).delete_vertex(v))
            if v in g.looped:
                result = _B * away + _A * complemented
            else:
                result = _A * away + _B * complemented
        elif g.looped:
            v = min(g.looped)
            result = _AINV_B * rec(g.delete_loop(v)) + _LOOP_COEFF * rec(
                g.local_complement(v).delete_vertex(v)
            )
        else:
            v, w = min(g.sorted_edges())
            pivoted = g.pivot(v, w)
            result = (
                _A2 * rec(pivoted.delete_vertex(v).delete_vertex(w))
                + _AB * rec(pivoted.local_complement(v).delete_vertex(v).delete_vertex(w))
                + _B * rec(g.local_complement(v).delete_vertex(v))
            )

        memo[key] = result
        return result

    result = rec(g)
    lo = result.min_exponents()
    if min(lo) < 0:
        raise EngineMismatchError(
            f"recursive bracket left negative exponents {lo}; intermediates failed to cancel"
        )
    return result


@dataclass(frozen=True)
class BracketResult:
    """Bracket, reduced bracket and Jones polynomial of one marked graph."""

    bracket: BracketPoly
    reduced: Laurent
    jones: Laurent
    n: int
    looped_count: int


def bracket(g: MarkedGraph, method: str = "both") -> BracketResult:
    """Evaluate the bracket with the chosen engine(s) and its normalizations.

    With ``method="both"`` the two engines must agree exactly; disagreement
    raises :class:`EngineMismatchError`.
    """
    if method == "nullity":
        poly = bracket_nullity(g)
    elif method == "recursion":
        poly = bracket_recursive(g)
    elif method == "both":
        poly = bracket_nullity(g)
        other = bracket_recursive(g)
        if poly != other:
            raise EngineMismatchError(
                f"bracket engines disagree on {g.serialize()!r}: "
                f"nullity gave {poly}, recursion gave {other}"
            )
    else:
        raise ValueError(f"unknown method {method!r}; want 'nullity', 'recursion' or 'both'")
    reduced = reduce_bracket(poly)
    n = g.vertex_count
    looped_count = len(g.looped)
    return BracketResult(poly, reduced, jones_normalize(reduced, n, looped_count), n, looped_count)


def check_old_recursion(g: MarkedGraph, v: str) -> bool:
    """Check [G] = A B^-1 [G - loop at v] + (B - A^2 B^-1) [G - v] exactly.

    Requires v looped and marked; marked neighbors are allowed.
    """
    if not g.is_looped(v) or not g.is_marked(v):
        raise ValueError(f"vertex {v!r} must be looped and marked")
    lhs = bracket_nullity(g)
    coeff1 = BracketPoly.monomial(1, a=1, b=-1)
    coeff2 = BracketPoly({(0, 1, 0): 1, (2, -1, 0): -1})
    rhs = coeff1 * bracket_nullity(g.delete_loop(v)) + coeff2 * bracket_nullity(g.delete_vertex(v))
    return lhs == rhs


def check_reverse(g: MarkedGraph, v: str) -> bool:
    """Check [G] = [G^v with the loop at v removed] exactly.

    Requires v looped and marked with no marked neighbor.  Local
    complementation never touches v's own loop, so removing it afterwards is
    well defined.
    """
    if not g.is_looped(v) or not g.is_marked(v):
        raise ValueError(f"vertex {v!r} must be looped and marked")
    if g.neighbors(v) & g.marked:
        raise ValueError(f"vertex {v!r} must not have a marked neighbor")
    return bracket_nullity(g) == bracket_nullity(g.local_complement(v).delete_loop(v))
