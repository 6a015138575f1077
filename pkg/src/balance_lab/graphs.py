"""Ternary appraisal matrices and their undirected skeleton views.

An appraisal matrix holds one value from {-1, 0, +1} per ordered node pair:
antagonistic, absent-or-neutral, friendly.  The diagonal is zero (no
self-appraisal).  Node ids are 1-based externally; induced subgraphs are
contiguously re-indexed internally but carry the original ids in ``labels``
so worked examples keep their node names.

All types are immutable values after construction and safe to share across
workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Union


class EdgeListError(ValueError):
    """A problem in the plain-text edge-list format."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


def _default_labels(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


@dataclass(frozen=True)
class AppraisalMatrix:
    """Square ternary matrix of interpersonal appraisals with zero diagonal.

    ``rows`` is positional storage; ``labels[a]`` is the external id of
    row/column ``a``.  Labels are strictly increasing positive integers, by
    default ``1..n``.  Dense storage is deliberate: every exact analysis in
    this toolkit caps out at small n.
    """

    rows: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] = ()
    _pos: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        labels = tuple(int(v) for v in (self.labels or _default_labels(n)))
        object.__setattr__(self, "labels", labels)
        if len(labels) != n:
            raise ValueError("labels length must match matrix size")
        if (labels and labels[0] < 1) or any(
            b <= a for a, b in zip(labels, labels[1:])
        ):
            raise ValueError("labels must be strictly increasing positive integers")
        for a, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("appraisal matrix must be square")
            if row[a] != 0:
                raise ValueError(f"diagonal entry for node {labels[a]} must be 0")
            for v in row:
                if v not in (-1, 0, 1):
                    raise ValueError(f"appraisal values must be -1, 0 or 1, got {v}")
        object.__setattr__(self, "_pos", {lab: a for a, lab in enumerate(labels)})

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def nodes(self) -> tuple[int, ...]:
        return self.labels

    @classmethod
    def zeros(cls, n: int) -> "AppraisalMatrix":
        if n < 1:
            raise ValueError("node count must be positive")
        return cls(tuple((0,) * n for _ in range(n)))

    @classmethod
    def from_rows(
        cls, rows: Iterable[Iterable[int]], labels: Iterable[int] | None = None
    ) -> "AppraisalMatrix":
        return cls(tuple(tuple(r) for r in rows), tuple(labels) if labels else ())

    @classmethod
    def from_edge_list(
        cls, n: int, entries: Iterable[tuple[int, int, int]]
    ) -> "AppraisalMatrix":
        """Build a matrix on nodes ``1..n`` from ``(i, j, sign)`` triples.

        Duplicate ordered pairs are a hard error rather than last-wins:
        silent overwrites hide fixture typos.
        """
        if n < 1:
            raise ValueError("node count must be positive")
        grid = [[0] * n for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for i, j, s in entries:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"node id out of range: ({i}, {j}) with n={n}")
            if i == j:
                raise ValueError(f"self-loop not allowed: ({i}, {j})")
            if s not in (-1, 1):
                raise ValueError(f"sign must be -1 or 1, got {s}")
            if (i, j) in seen:
                raise ValueError(f"duplicate ordered pair ({i}, {j})")
            seen.add((i, j))
            grid[i - 1][j - 1] = s
        return cls(tuple(tuple(r) for r in grid))

    def index_of(self, node: int) -> int:
        """Positional index of an external node id."""
        try:
            return self._pos[node]
        except KeyError:
            raise ValueError(f"node {node} not in matrix") from None

    def entry(self, i: int, j: int) -> int:
        """Appraisal of node ``i`` toward node ``j`` (external ids)."""
        return self.rows[self.index_of(i)][self.index_of(j)]

    def with_entry(self, i: int, j: int, value: int) -> "AppraisalMatrix":
        """A copy with one entry replaced."""
        if i == j:
            raise ValueError("diagonal entries are fixed at 0")
        a, b = self.index_of(i), self.index_of(j)
        rows = [list(r) for r in self.rows]
        rows[a][b] = value
        return AppraisalMatrix(tuple(tuple(r) for r in rows), self.labels)

    def nonzero_links(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(i, j, sign)`` for every nonzero entry, in label order."""
        for a, i in enumerate(self.labels):
            row = self.rows[a]
            for b, j in enumerate(self.labels):
                if row[b]:
                    yield (i, j, row[b])

    def nonzero_count(self) -> int:
        return sum(1 for row in self.rows for v in row if v)

    def negative_count(self) -> int:
        return sum(1 for row in self.rows for v in row if v < 0)


@dataclass(frozen=True)
class UndirectedSkeleton:
    """Unsigned undirected graph: node ids plus a set of unordered pairs."""

    nodes: tuple[int, ...]
    edges: frozenset[tuple[int, int]] = frozenset()
    _adj: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        nodes = tuple(sorted({int(v) for v in self.nodes}))
        if nodes and nodes[0] < 1:
            raise ValueError("node ids must be positive integers")
        node_set = set(nodes)
        edges = set()
        for e in self.edges:
            a, b = e
            if a == b:
                raise ValueError(f"self-pair not allowed: {e}")
            if a not in node_set or b not in node_set:
                raise ValueError(f"edge {e} has an endpoint outside the node set")
            edges.add((a, b) if a < b else (b, a))
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", frozenset(edges))
        adj: dict[int, list[int]] = {v: [] for v in nodes}
        for a, b in sorted(edges):
            adj[a].append(b)
            adj[b].append(a)
        object.__setattr__(self, "_adj", {v: tuple(sorted(ws)) for v, ws in adj.items()})

    @classmethod
    def from_edges(
        cls, nodes: Union[int, Iterable[int]], pairs: Iterable[tuple[int, int]]
    ) -> "UndirectedSkeleton":
        """Build from a node count (meaning ``1..n``) or explicit node ids."""
        node_tuple = _default_labels(nodes) if isinstance(nodes, int) else tuple(nodes)
        return cls(node_tuple, frozenset((a, b) for a, b in pairs))

    @property
    def n(self) -> int:
        return len(self.nodes)

    def has_edge(self, i: int, j: int) -> bool:
        return ((i, j) if i < j else (j, i)) in self.edges

    def neighbors(self, i: int) -> tuple[int, ...]:
        try:
            return self._adj[i]
        except KeyError:
            raise ValueError(f"node {i} not in graph") from None

    def edge_count(self) -> int:
        return len(self.edges)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {self.nodes[0]}
        frontier = [self.nodes[0]]
        while frontier:
            v = frontier.pop()
            for w in self._adj[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == self.n


def skeleton(x: AppraisalMatrix) -> UndirectedSkeleton:
    """The unsigned undirected view: pair {i,j} present iff either direction is nonzero."""
    edges = set()
    labels = x.labels
    for a in range(x.n):
        for b in range(a + 1, x.n):
            if x.rows[a][b] or x.rows[b][a]:
                edges.add((labels[a], labels[b]))
    return UndirectedSkeleton(labels, frozenset(edges))


def is_bilateral(x: AppraisalMatrix) -> bool:
    """True iff links exist in both directions or neither (X_ij != 0 iff X_ji != 0)."""
    for a in range(x.n):
        for b in range(a + 1, x.n):
            if (x.rows[a][b] != 0) != (x.rows[b][a] != 0):
                return False
    return True


def is_sign_symmetric(x: AppraisalMatrix) -> bool:
    """True iff the matrix equals its transpose (bilateral with matching signs)."""
    for a in range(x.n):
        for b in range(a + 1, x.n):
            if x.rows[a][b] != x.rows[b][a]:
                return False
    return True


def ego_network(x: AppraisalMatrix, i: int) -> tuple[frozenset[int], AppraisalMatrix]:
    """Node ``i`` plus everyone ``i`` appraises, and the induced submatrix.

    The member set always contains ``i`` itself, even when ``i`` appraises
    nobody.
    """
    a = x.index_of(i)
    members = {i}
    for b, j in enumerate(x.labels):
        if x.rows[a][b]:
            members.add(j)
    return frozenset(members), induced_subgraph(x, members)


def induced_subgraph(
    g: Union[AppraisalMatrix, UndirectedSkeleton], members: Iterable[int]
):
    """Restriction to ``members``: keeps exactly links with both endpoints inside.

    Works on both graph kinds and returns the same kind; original node ids
    are retained as labels.
    """
    member_set = set(members)
    if isinstance(g, AppraisalMatrix):
        missing = member_set - set(g.labels)
        if missing:
            raise ValueError(f"nodes not in matrix: {sorted(missing)}")
        keep = sorted(member_set)
        idx = [g.index_of(v) for v in keep]
        rows = tuple(tuple(g.rows[a][b] for b in idx) for a in idx)
        return AppraisalMatrix(rows, tuple(keep))
    if isinstance(g, UndirectedSkeleton):
        missing = member_set - set(g.nodes)
        if missing:
            raise ValueError(f"nodes not in graph: {sorted(missing)}")
        edges = frozenset(e for e in g.edges if e[0] in member_set and e[1] in member_set)
        return UndirectedSkeleton(tuple(sorted(member_set)), edges)
    raise TypeError(f"unsupported graph type: {type(g).__name__}")


# ---------------------------------------------------------------------------
# Edge-list text format.
#
#   n <N>
#   <i> <j> <s>      one directed signed link per line, s in {-1, 1}
#
# '#'-prefixed lines and blank lines are ignored.  Output is sorted by
# (i, j), so writing is byte-reproducible.
# ---------------------------------------------------------------------------


def parse_edge_list(text: str) -> AppraisalMatrix:
    """Parse the edge-list format; errors carry 1-based line numbers."""
    n: int | None = None
    entries: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or tokens[0] != "n":
                raise EdgeListError("expected header 'n <count>'", line_no)
            try:
                n = int(tokens[1])
            except ValueError:
                raise EdgeListError(f"bad node count {tokens[1]!r}", line_no) from None
            if n < 1:
                raise EdgeListError("node count must be positive", line_no)
            continue
        if len(tokens) != 3:
            raise EdgeListError("expected '<i> <j> <sign>'", line_no)
        try:
            i, j, s = (int(t) for t in tokens)
        except ValueError:
            raise EdgeListError(f"non-integer field in {line!r}", line_no) from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise EdgeListError(f"node id out of range in {line!r}", line_no)
        if i == j:
            raise EdgeListError(f"self-loop not allowed: {line!r}", line_no)
        if s not in (-1, 1):
            raise EdgeListError(f"sign must be -1 or 1, got {s}", line_no)
        if (i, j) in seen:
            raise EdgeListError(f"duplicate ordered pair ({i}, {j})", line_no)
        seen.add((i, j))
        entries.append((i, j, s))
    if n is None:
        raise EdgeListError("missing 'n <count>' header")
    return AppraisalMatrix.from_edge_list(n, entries)


def format_edge_list(x: AppraisalMatrix) -> str:
    """Serialize to the edge-list format, entries sorted by (i, j)."""
    if x.labels != _default_labels(x.n):
        raise ValueError("edge-list format requires contiguous node ids 1..n")
    lines = [f"n {x.n}"]
    for i, j, s in sorted(x.nonzero_links()):
        lines.append(f"{i} {j} {s}")
    return "\n".join(lines) + "\n"


def read_edge_list(path: Union[str, Path]) -> AppraisalMatrix:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def write_edge_list(x: AppraisalMatrix, path: Union[str, Path]) -> None:
    Path(path).write_text(format_edge_list(x), encoding="utf-8")
