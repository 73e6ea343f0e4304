"""Shift-of-finite-type presentations from nonnegative integer matrices.

A presentation is a finite directed graph given by its adjacency matrix.
Edges are triples (i, j, c) with 0 <= c < A(i, j), so parallel edges are
first class while zero-one matrices give the familiar states-as-symbols
picture.  Presentations are kept in essential form: every state has at
least one outgoing and one incoming edge.  The empty presentation is a
legal value (matrix ``None``), needed for fixed-point subshifts that die
under trimming.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import CapExceededError, InputError, PreconditionError
from .matrices import IntMatrix, trace_of_power

Edge = tuple  # (initial state, terminal state, multiplicity index)


@dataclass(frozen=True)
class SftPresentation:
    """Essential presentation of a shift of finite type.

    ``matrix`` is ``None`` for the empty shift.  Construct via
    ``from_matrix`` (which insists on essential form) or ``trim_essential``.
    """

    matrix: IntMatrix | None

    def __post_init__(self):
        if self.matrix is None:
            return
        n = self.matrix.dim
        rows = self.matrix.entries
        for i in range(n):
            if not any(rows[i][j] for j in range(n)):
                raise PreconditionError(
                    f"state {self.matrix.label(i)} has no outgoing edge; trim_essential first"
                )
            if not any(rows[j][i] for j in range(n)):
                raise PreconditionError(
                    f"state {self.matrix.label(i)} has no incoming edge; trim_essential first"
                )

    @classmethod
    def from_matrix(cls, matrix: IntMatrix) -> "SftPresentation":
        return cls(matrix)

    @classmethod
    def empty(cls) -> "SftPresentation":
        return cls(None)

    @property
    def is_empty(self) -> bool:
        return self.matrix is None

    @property
    def num_states(self) -> int:
        return 0 if self.matrix is None else self.matrix.dim

    def label(self, i: int) -> str:
        assert self.matrix is not None
        return self.matrix.label(i)

    @cached_property
    def edges(self) -> tuple:
        """All edge triples in lexicographic order."""
        if self.matrix is None:
            return ()
        rows = self.matrix.entries
        n = self.matrix.dim
        return tuple(
            (i, j, c) for i in range(n) for j in range(n) for c in range(rows[i][j])
        )

    @cached_property
    def out_edges(self) -> tuple:
        """out_edges[i]: edges leaving state i, lexicographic."""
        table = [[] for _ in range(self.num_states)]
        for e in self.edges:
            table[e[0]].append(e)
        return tuple(tuple(es) for es in table)

    @cached_property
    def in_edges(self) -> tuple:
        table = [[] for _ in range(self.num_states)]
        for e in self.edges:
            table[e[1]].append(e)
        return tuple(tuple(es) for es in table)

    def has_edge(self, e) -> bool:
        if self.matrix is None:
            return False
        i, j, c = e
        n = self.matrix.dim
        return 0 <= i < n and 0 <= j < n and 0 <= c < self.matrix.entries[i][j]

    def is_zero_one(self) -> bool:
        return self.matrix is None or self.matrix.is_zero_one()


@dataclass(frozen=True)
class Path:
    """Finite nonempty edge path; consecutive edges must compose."""

    edges: tuple

    def __post_init__(self):
        edges = tuple(tuple(e) for e in self.edges)
        if not edges:
            raise InputError("a path needs at least one edge")
        for e, f in zip(edges, edges[1:]):
            if e[1] != f[0]:
                raise InputError(f"edges {e} and {f} do not compose")
        object.__setattr__(self, "edges", edges)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def states(self) -> tuple:
        """Visited states, length len(edges) + 1."""
        return (self.edges[0][0],) + tuple(e[1] for e in self.edges)


@dataclass(frozen=True)
class CycleWord:
    """Closed edge path with a distinguished starting phase.

    Distinct rotations of the same cycle are distinct values; they present
    distinct periodic points.  ``canonical_rotation`` gives the
    lexicographically least rotation, the representative used when phases
    must be identified.
    """

    edges: tuple

    def __post_init__(self):
        edges = tuple(tuple(e) for e in self.edges)
        if not edges:
            raise InputError("a cycle needs at least one edge")
        for e, f in zip(edges, edges[1:]):
            if e[1] != f[0]:
                raise InputError(f"edges {e} and {f} do not compose")
        if edges[-1][1] != edges[0][0]:
            raise InputError("cycle does not close up")
        object.__setattr__(self, "edges", edges)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def base(self) -> int:
        return self.edges[0][0]

    @property
    def states(self) -> tuple:
        """States visited, one per edge (the initial states)."""
        return tuple(e[0] for e in self.edges)

    def rotate(self, k: int) -> "CycleWord":
        k %= len(self.edges)
        return CycleWord(self.edges[k:] + self.edges[:k])

    def canonical_rotation(self) -> "CycleWord":
        edges = self.edges
        best = min(edges[k:] + edges[:k] for k in range(len(edges)))
        return CycleWord(best)


def trim_essential(matrix: IntMatrix):
    """Largest essential sub-presentation of ``matrix``.

    Iteratively deletes states with no outgoing or no incoming edge until
    stable.  Returns (presentation, kept) where ``kept`` maps the surviving
    state indices back to the original ones; the empty presentation is a
    legal result.
    """
    alive = list(range(matrix.dim))
    rows = matrix.entries
    while alive:
        keep = [
            i
            for i in alive
            if any(rows[i][j] for j in alive) and any(rows[j][i] for j in alive)
        ]
        if keep == alive:
            break
        alive = keep
    if not alive:
        return SftPresentation.empty(), ()
    labels = None
    if matrix.labels is not None:
        labels = tuple(matrix.labels[i] for i in alive)
    sub = IntMatrix(tuple(tuple(rows[i][j] for j in alive) for i in alive), labels=labels)
    return SftPresentation(sub), tuple(alive)


def is_irreducible(p: SftPresentation) -> bool:
    """True iff the underlying digraph is strongly connected."""
    if p.is_empty:
        raise PreconditionError("irreducibility is undefined for the empty presentation")
    n = p.num_states
    rows = p.matrix.entries

    def reaches(start, transposed):
        seen = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                hit = rows[j][i] if transposed else rows[i][j]
                if hit and j not in seen:
                    seen.add(j)
                    stack.append(j)
        return seen

    return len(reaches(0, False)) == n and len(reaches(0, True)) == n


def higher_block(p: SftPresentation, n: int):
    """The n-block presentation of a zero-one presentation.

    States of the result are the allowed words of n states of ``p``, with
    an edge from b to b' exactly when they overlap progressively.  Returns
    (presentation, blocks) where ``blocks`` maps each new state index to
    its underlying word of original states.
    """
    if n < 2:
        raise InputError("block length must be at least 2")
    if p.is_empty:
        return p, {}
    if not p.is_zero_one():
        raise PreconditionError("higher-block recoding needs a zero-one matrix")
    rows = p.matrix.entries
    dim = p.num_states
    blocks = []

    def extend(prefix):
        if len(prefix) == n:
            blocks.append(tuple(prefix))
            return
        for j in range(dim):
            if rows[prefix[-1]][j]:
                prefix.append(j)
                extend(prefix)
                prefix.pop()

    for s in range(dim):
        extend([s])
    index = {b: k for k, b in enumerate(blocks)}
    entries = [[0] * len(blocks) for _ in blocks]
    for b, k in index.items():
        for b2, k2 in index.items():
            if b[1:] == b2[:-1]:
                entries[k][k2] = 1
    labels = tuple(".".join(p.label(s) for s in b) for b in blocks)
    out = SftPresentation(IntMatrix(tuple(tuple(r) for r in entries), labels=labels))
    return out, dict(enumerate(blocks))


def enumerate_cycles(p: SftPresentation, length: int, cap: int):
    """All closed edge paths of exactly the given length.

    Each starting phase is a distinct entry (rotations are not identified),
    so the count equals trace(A^length).  Results come out in lexicographic
    order.  Raises CapExceededError as soon as the running count passes
    ``cap``; callers should shrink the instance.
    """
    if length < 1:
        raise InputError("cycle length must be at least 1")
    if cap < 1:
        raise InputError("cap must be at least 1")
    results = []
    if p.is_empty:
        return results
    n = p.num_states
    out_edges = p.out_edges
    for s0 in range(n):
        # back[k][j]: some path of length k runs from j to s0
        back = [[False] * n for _ in range(length + 1)]
        back[0][s0] = True
        for k in range(1, length + 1):
            prev = back[k - 1]
            cur = back[k]
            for j in range(n):
                cur[j] = any(prev[e[1]] for e in out_edges[j])
        if not back[length][s0]:
            continue
        path = []

        def walk(cur, depth):
            if depth == length:
                results.append(CycleWord(tuple(path)))
                if len(results) > cap:
                    raise CapExceededError(
                        f"more than {cap} cycles of length {length}; raise the cap or shrink the instance"
                    )
                return
            remaining = length - depth - 1
            for e in out_edges[cur]:
                if back[remaining][e[1]]:
                    path.append(e)
                    walk(e[1], depth + 1)
                    path.pop()

        walk(s0, 0)
    return results


def count_check(p: SftPresentation, length: int, cap: int) -> bool:
    """Cross-check: |enumerate_cycles| == trace_of_power for one length."""
    if p.is_empty:
        return True
    return len(enumerate_cycles(p, length, cap)) == trace_of_power(p.matrix, length)


def shortest_path(p: SftPresentation, src: int, dst: int):
    """Deterministic shortest edge path src -> dst, () if src == dst,
    None if unreachable."""
    if src == dst:
        return ()
    prev = {src: None}
    frontier = [src]
    while frontier:
        nxt = []
        for i in frontier:
            for e in p.out_edges[i]:
                if e[1] not in prev:
                    prev[e[1]] = e
                    nxt.append(e[1])
        if dst in prev:
            break
        frontier = nxt
    if dst not in prev:
        return None
    edges = []
    cur = dst
    while prev[cur] is not None:
        e = prev[cur]
        edges.append(e)
        cur = e[0]
    return tuple(reversed(edges))
