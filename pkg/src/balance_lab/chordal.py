"""Chordal-graph machinery and the balance-equivalence certificate.

A cycle is *subchordal* when some subgraph on exactly its nodes contains all
cycle edges and is chordal; such a witness supports a fan triangulation of
the cycle's polygon and forces the cycle sign positive in any triad-wise
balanced assignment.  A skeleton on which every maximal cyclic subgraph
admits a subchordal covering cycle whose chords split nicely guarantees that
triad-wise and two-faction balance coincide for every sign assignment; this
module both certifies that condition and verifies the equivalence by
exhausting sign assignments on small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .balance import (
    Cycle,
    GuardLimitError,
    _iter_simple_cycles,
    detect_two_faction,
    enumerate_simple_cycles,
)
from .graphs import AppraisalMatrix, UndirectedSkeleton, induced_subgraph

CHORD_GUARD = 20
EXHAUSTIVE_EDGE_LIMIT = 14


def _pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _cycle_edges(cycle: Cycle) -> set[tuple[int, int]]:
    m = len(cycle)
    return {_pair(cycle[p], cycle[(p + 1) % m]) for p in range(m)}


def _validate_cycle(g: UndirectedSkeleton, cycle: Cycle) -> None:
    if len(cycle) < 3:
        raise ValueError("cycle must have at least three nodes")
    if len(set(cycle)) != len(cycle):
        raise ValueError("cycle nodes must be distinct")
    node_set = set(g.nodes)
    for v in cycle:
        if v not in node_set:
            raise ValueError(f"cycle node {v} not in graph")
    m = len(cycle)
    for p in range(m):
        a, b = cycle[p], cycle[(p + 1) % m]
        if not g.has_edge(a, b):
            raise ValueError(f"cycle edge {{{a}, {b}}} missing from graph")


def find_chords(g: UndirectedSkeleton, cycle: Cycle) -> list[tuple[int, int]]:
    """Edges of ``g`` joining two non-consecutive nodes of ``cycle``."""
    _validate_cycle(g, cycle)
    m = len(cycle)
    chords = []
    for p in range(m):
        for q in range(p + 2, m):
            if p == 0 and q == m - 1:
                continue
            e = _pair(cycle[p], cycle[q])
            if e in g.edges:
                chords.append(e)
    return sorted(chords)


def split_by_chord(cycle: Cycle, chord: tuple[int, int]) -> tuple[Cycle, Cycle]:
    """Split a cycle at a chord into the two cycles sharing its endpoints.

    For cycle (i_1, ..., i_m) and chord {i_p, i_q} with q > p + 1, the parts
    are (i_1, ..., i_p, i_q, ..., i_m) and (i_p, ..., i_q); their lengths sum
    to m + 2.
    """
    a, b = chord
    try:
        p, q = sorted((cycle.index(a), cycle.index(b)))
    except ValueError:
        raise ValueError(f"chord {chord} endpoints not on cycle") from None
    m = len(cycle)
    if q - p < 2 or (p == 0 and q == m - 1):
        raise ValueError(f"chord {chord} joins consecutive cycle nodes")
    return (cycle[: p + 1] + cycle[q:], cycle[p : q + 1])


def is_chordal(g: UndirectedSkeleton) -> bool:
    """Chordality via maximum-cardinality search.

    MCS visits the node with the most visited neighbors first; the reverse
    visit order is a perfect elimination ordering iff the graph is chordal,
    checked by requiring each node's later neighbors minus the closest one
    to be adjacent to that closest one.  Graphs without cycles longer than
    three (trees, single triangles) pass vacuously.
    """
    if g.n <= 2:
        return True
    weight = {v: 0 for v in g.nodes}
    unvisited = set(g.nodes)
    visit_order: list[int] = []
    while unvisited:
        v = min(unvisited, key=lambda u: (-weight[u], u))
        unvisited.remove(v)
        visit_order.append(v)
        for w in g.neighbors(v):
            if w in unvisited:
                weight[w] += 1
    peo = list(reversed(visit_order))
    pos = {v: idx for idx, v in enumerate(peo)}
    neighbor_sets = {v: set(g.neighbors(v)) for v in g.nodes}
    for v in peo:
        later = [w for w in neighbor_sets[v] if pos[w] > pos[v]]
        if not later:
            continue
        u = min(later, key=pos.__getitem__)
        for w in later:
            if w != u and w not in neighbor_sets[u]:
                return False
    return True


@dataclass(frozen=True)
class SubchordalWitness:
    """A chordal subgraph on exactly a cycle's nodes containing its edges."""

    cycle: Cycle
    extra_edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "cycle", tuple(self.cycle))
        object.__setattr__(
            self, "extra_edges", frozenset(_pair(a, b) for a, b in self.extra_edges)
        )
        nodes = set(self.cycle)
        if len(self.cycle) < 3 or len(nodes) != len(self.cycle):
            raise ValueError("witness cycle must be a simple cycle of length >= 3")
        base = _cycle_edges(self.cycle)
        for e in self.extra_edges:
            if e[0] not in nodes or e[1] not in nodes:
                raise ValueError(f"witness edge {e} leaves the cycle's node set")
            if e in base:
                raise ValueError(f"witness edge {e} duplicates a cycle edge")
        if not is_chordal(self.graph()):
            raise ValueError("witness edges do not form a chordal graph")

    @property
    def all_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(_cycle_edges(self.cycle)) | self.extra_edges

    def graph(self) -> UndirectedSkeleton:
        return UndirectedSkeleton(
            tuple(sorted(set(self.cycle))),
            frozenset(_cycle_edges(self.cycle)) | self.extra_edges,
        )


@dataclass(frozen=True)
class TriangulationFan:
    """Triangles partitioning the cycle's polygon, one per recursion leaf."""

    triads: tuple[tuple[int, int, int], ...]


def _chordless_long_cycle(g: UndirectedSkeleton) -> Optional[Cycle]:
    # Shortest cycle of length >= 4 with no chord; None iff g is chordal.
    best: Optional[Cycle] = None
    for c in _iter_simple_cycles(g, None):
        if len(c) < 4 or (best is not None and len(c) >= len(best)):
            continue
        if not find_chords(g, c):
            best = c
            if len(best) == 4:
                break
    return best


def is_subchordal(
    g: UndirectedSkeleton, cycle: Cycle, force: bool = False
) -> Optional[SubchordalWitness]:
    """Search for a chordal witness over the chords available in ``g``.

    Chordality is not monotone under edge addition, so a greedy fill is
    unsound.  Instead we branch and bound: while the current candidate has
    a chordless cycle of length >= 4, some available chord of that cycle
    must join the witness, so we branch on each.  Every chordal supergraph
    within the available chords is reachable this way, hence a None result
    means no witness exists.
    """
    _validate_cycle(g, cycle)
    chords = find_chords(g, cycle)
    if len(chords) > CHORD_GUARD and not force:
        raise GuardLimitError(
            f"subchordal search refused with {len(chords)} candidate chords "
            f"> {CHORD_GUARD}; pass force to override"
        )
    nodes = tuple(sorted(set(cycle)))
    base = frozenset(_cycle_edges(cycle))
    dead_ends: set[frozenset] = set()

    def attempt(included: frozenset) -> Optional[frozenset]:
        if included in dead_ends:
            return None
        candidate = UndirectedSkeleton(nodes, base | included)
        if is_chordal(candidate):
            return included
        gap = _chordless_long_cycle(candidate)
        pos = {v: p for p, v in enumerate(gap)}
        m = len(gap)
        for e in chords:
            if e in included:
                continue
            pa, pb = pos.get(e[0]), pos.get(e[1])
            if pa is None or pb is None:
                continue
            if pa > pb:
                pa, pb = pb, pa
            if pb - pa < 2 or (pa == 0 and pb == m - 1):
                continue
            found = attempt(included | {e})
            if found is not None:
                return found
        dead_ends.add(included)
        return None

    result = attempt(frozenset())
    if result is None:
        return None
    return SubchordalWitness(tuple(cycle), result)


def _first_internal_chord(
    cycle: Cycle, edges: frozenset[tuple[int, int]]
) -> Optional[tuple[int, int]]:
    # First (p, q) position pair, q - p >= 2 and not the wrap pair, whose
    # edge is present; None for triangles or chordless cycles.
    m = len(cycle)
    for p in range(m):
        for q in range(p + 2, m):
            if p == 0 and q == m - 1:
                continue
            if _pair(cycle[p], cycle[q]) in edges:
                return (p, q)
    return None


def fan_triangulation(witness: SubchordalWitness) -> TriangulationFan:
    """Cut the witness cycle at chords until only triangles remain.

    Produces exactly ``len(cycle) - 2`` triangles; together they partition
    the convex polygon spanned by the cycle, each cycle edge used once and
    each cutting chord shared by exactly two triangles.
    """
    edges = witness.all_edges

    def cut(cycle: Cycle) -> list[tuple[int, int, int]]:
        if len(cycle) == 3:
            return [tuple(sorted(cycle))]
        at = _first_internal_chord(cycle, edges)
        if at is None:
            raise ValueError("witness is not chordal on a sub-cycle")
        p, q = at
        first, second = split_by_chord(cycle, _pair(cycle[p], cycle[q]))
        return cut(first) + cut(second)

    return TriangulationFan(tuple(cut(witness.cycle)))


def consecutive_triad(witness: SubchordalWitness) -> tuple[int, int, int]:
    """A witness triangle on three consecutive nodes of the cycle.

    Shrinks chord spans: starting from any chord, the enclosed sub-cycle is
    again chordal inside the witness, so it has a chord with a strictly
    smaller span; iterating lands on a span of two, which is the triangle.
    """
    cycle = witness.cycle
    if len(cycle) == 3:
        return (cycle[0], cycle[1], cycle[2])
    edges = witness.all_edges
    at = _first_internal_chord(cycle, edges)
    if at is None:
        raise ValueError("witness of length > 3 must contain a chord")
    p, q = at
    while q - p > 2:
        inner = None
        for a in range(p, q + 1):
            for b in range(a + 2, q + 1):
                if a == p and b == q:
                    continue
                if _pair(cycle[a], cycle[b]) in edges:
                    inner = (a, b)
                    break
            if inner:
                break
        if inner is None:
            raise ValueError("witness is not chordal on a sub-cycle")
        p, q = inner
    return (cycle[p], cycle[p + 1], cycle[p + 2])


def maximal_cyclic_subgraphs(
    g: UndirectedSkeleton, force: bool = False
) -> list[frozenset[int]]:
    """Node sets traversed exactly by some cycle and by no longer cycle.

    Computed by enumerating all simple cycles, collecting their node sets,
    and keeping the inclusion-maximal ones.  Exact and exponential, guarded
    like cycle enumeration.
    """
    node_sets = {frozenset(c) for c in enumerate_simple_cycles(g, force=force)}
    maximal = [s for s in node_sets if not any(s < t for t in node_sets)]
    return sorted(maximal, key=lambda s: sorted(s))


@dataclass(frozen=True)
class SubgraphCertificate:
    """Per-maximal-cyclic-subgraph outcome of the equivalence conditions."""

    nodes: tuple[int, ...]
    certified: bool
    cycle: Optional[Cycle]
    reason: Optional[str] = None


def check_equivalence_conditions(
    g: UndirectedSkeleton, force: bool = False
) -> tuple[bool, list[SubgraphCertificate]]:
    """Certify the sufficient condition for balance-notion equivalence.

    For each maximal cyclic subgraph with more than three nodes, search for
    one covering cycle that (i) is subchordal and (ii) has, for every chord
    in the ambient graph, at least one subchordal side after splitting.
    Both conditions must be met by the same cycle.  The report lists, per
    subgraph, the certifying cycle or the failure reason.
    """
    if not g.is_connected():
        raise ValueError("equivalence conditions are defined for connected graphs")
    ok = True
    report: list[SubgraphCertificate] = []
    for node_set in maximal_cyclic_subgraphs(g, force=force):
        nodes = tuple(sorted(node_set))
        if len(nodes) <= 3:
            report.append(
                SubgraphCertificate(nodes, True, None, "three nodes or fewer: nothing to check")
            )
            continue
        sub = induced_subgraph(g, node_set)
        covering = [
            c
            for c in enumerate_simple_cycles(sub, force=True)
            if len(c) == len(nodes)
        ]
        found = None
        any_subchordal = False
        for cycle in covering:
            witness = is_subchordal(g, cycle, force=force)
            if witness is None:
                continue
            any_subchordal = True
            splits_ok = True
            for chord in find_chords(g, cycle):
                first, second = split_by_chord(cycle, chord)
                if (
                    is_subchordal(g, first, force=force) is None
                    and is_subchordal(g, second, force=force) is None
                ):
                    splits_ok = False
                    break
            if splits_ok:
                found = cycle
                break
        if found is not None:
            report.append(SubgraphCertificate(nodes, True, found))
        else:
            ok = False
            reason = (
                "every subchordal covering cycle has a chord with both split "
                "cycles non-subchordal"
                if any_subchordal
                else "no covering cycle is subchordal"
            )
            report.append(SubgraphCertificate(nodes, False, None, reason))
    return ok, report


def _triangles(g: UndirectedSkeleton) -> list[tuple[int, int, int]]:
    nodes = g.nodes
    out = []
    for ai in range(len(nodes)):
        for bi in range(ai + 1, len(nodes)):
            if not g.has_edge(nodes[ai], nodes[bi]):
                continue
            for ci in range(bi + 1, len(nodes)):
                if g.has_edge(nodes[ai], nodes[ci]) and g.has_edge(nodes[bi], nodes[ci]):
                    out.append((nodes[ai], nodes[bi], nodes[ci]))
    return out


def equivalence_counterexample(g: UndirectedSkeleton) -> Optional[AppraisalMatrix]:
    """A sign-symmetric assignment that is triad-wise but not two-faction balanced.

    Backtracks over edge signs, pruning any branch that closes a negative
    triangle, so only triad-wise balanced assignments reach a leaf; each
    leaf is then tested for a two-faction witness.  Returns None when every
    triad-wise balanced assignment on ``g`` is two-faction balanced, which
    is exactly when the two balance notions coincide on this skeleton
    (asymmetric assignments fail both notions at once, so symmetric ones
    decide the question).
    """
    edges = sorted(g.edges)
    if len(edges) > EXHAUSTIVE_EDGE_LIMIT:
        raise GuardLimitError(
            f"exhaustive verification refused with {len(edges)} edges "
            f"> {EXHAUSTIVE_EDGE_LIMIT}"
        )
    index = {e: t for t, e in enumerate(edges)}
    closing: list[list[tuple[int, int]]] = [[] for _ in edges]
    for a, b, c in _triangles(g):
        e1, e2, e3 = index[_pair(a, b)], index[_pair(a, c)], index[_pair(b, c)]
        hi, mid, lo = sorted((e1, e2, e3), reverse=True)
        closing[hi].append((mid, lo))
    signs = [0] * len(edges)

    def matrix() -> AppraisalMatrix:
        pos = {v: a for a, v in enumerate(g.nodes)}
        rows = [[0] * g.n for _ in range(g.n)]
        for e, s in zip(edges, signs):
            a, b = pos[e[0]], pos[e[1]]
            rows[a][b] = rows[b][a] = s
        return AppraisalMatrix(tuple(tuple(r) for r in rows), g.nodes)

    def search(t: int) -> Optional[AppraisalMatrix]:
        if t == len(edges):
            x = matrix()
            return x if detect_two_faction(x) is None else None
        for s in (1, -1):
            signs[t] = s
            if all(signs[e1] * signs[e2] * s > 0 for e1, e2 in closing[t]):
                found = search(t + 1)
                if found is not None:
                    return found
        signs[t] = 0
        return None

    return search(0)


def verify_equivalence_exhaustive(g: UndirectedSkeleton) -> bool:
    """True iff triad-wise and two-faction balance agree on every assignment."""
    return equivalence_counterexample(g) is None
