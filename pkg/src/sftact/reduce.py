"""Left and right reduced shifts of a permutation action.

The right-reduced shift has one state per orbit of states and matrix
entries A_red(Gi, Gj) = sum over k in Gj of A(i0, k), taken at the orbit
representative i0; the left-reduced shift sums over the source orbit
instead.  Both are conjugacy invariants of the action.  The right
reduction also factors through selector matrices, A_red = U A V, and
carries a canonical right-resolving one-block factor map from the edge
alphabet of the action onto the reduced edge alphabet.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .matrices import IntMatrix, RectMatrix, mat_mul
from .action import PermutationAction
from .sft import SftPresentation


@dataclass(frozen=True)
class ReducedShift:
    """Reduced presentation together with its selector matrices.

    ``u_selector`` (orbits x states) picks orbit representatives and
    ``v_selector`` (states x orbits) records orbit membership, so that
    u_selector @ v_selector is the identity and, on the right side,
    matrix = u_selector @ A @ v_selector.
    """

    side: str
    matrix: IntMatrix
    u_selector: RectMatrix
    v_selector: RectMatrix

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise PreconditionError(f"unknown reduction side {self.side!r}")

    @property
    def presentation(self) -> SftPresentation:
        return SftPresentation(self.matrix)


def _selectors(a: PermutationAction):
    os_ = a.orbits
    n = a.group.degree
    m = os_.num_orbits
    u = RectMatrix(
        tuple(
            tuple(1 if j == os_.representatives[o] else 0 for j in range(n))
            for o in range(m)
        )
    )
    v = RectMatrix(
        tuple(tuple(1 if os_.orbit_of[i] == o else 0 for o in range(m)) for i in range(n))
    )
    return u, v


def _orbit_labels(a: PermutationAction):
    return tuple(f"G{rep + 1}" for rep in a.orbits.representatives)


def right_reduce(a: PermutationAction) -> ReducedShift:
    """Right-reduced shift: entry (Gi, Gj) counts edges from a representative
    of Gi into the orbit Gj.

    Independence of the representative is re-verified from every orbit
    member; a failure here would mean the action was never valid.
    """
    os_ = a.orbits
    rows = a.matrix.entries
    entries = []
    for orbit_i in os_.orbits:
        rep = orbit_i[0]
        row = tuple(sum(rows[rep][k] for k in orbit_j) for orbit_j in os_.orbits)
        for other in orbit_i[1:]:
            check = tuple(sum(rows[other][k] for k in orbit_j) for orbit_j in os_.orbits)
            if check != row:
                raise PreconditionError(
                    f"reduction not representative-independent at states {rep + 1}, {other + 1}"
                )
        entries.append(row)
    matrix = IntMatrix(tuple(entries), labels=_orbit_labels(a))
    u, v = _selectors(a)
    product = mat_mul(mat_mul(u, a.matrix.to_rect()), v)
    assert product.entries == matrix.entries, "selector identity U A V must reproduce the reduction"
    return ReducedShift(side="right", matrix=matrix, u_selector=u, v_selector=v)


def left_reduce(a: PermutationAction) -> ReducedShift:
    """Left-reduced shift: entry (Gi, Gj) counts edges from the orbit Gi
    into a representative of Gj."""
    os_ = a.orbits
    rows = a.matrix.entries
    entries = []
    for orbit_i in os_.orbits:
        row = []
        for orbit_j in os_.orbits:
            rep = orbit_j[0]
            val = sum(rows[k][rep] for k in orbit_i)
            for other in orbit_j[1:]:
                if sum(rows[k][other] for k in orbit_i) != val:
                    raise PreconditionError(
                        f"reduction not representative-independent at states {rep + 1}, {other + 1}"
                    )
            row.append(val)
        entries.append(tuple(row))
    matrix = IntMatrix(tuple(entries), labels=_orbit_labels(a))
    u, v = _selectors(a)
    vt_a_ut = mat_mul(mat_mul(v.transpose(), a.matrix.to_rect()), u.transpose())
    assert vt_a_ut.entries == matrix.entries, "selector identity V^t A U^t must reproduce the reduction"
    return ReducedShift(side="left", matrix=matrix, u_selector=u, v_selector=v)


def transpose_duality_check(a: PermutationAction) -> bool:
    """Left reduction of the transposed action equals the transpose of the
    right reduction (the two reductions are inverse to each other)."""
    transposed = PermutationAction(
        SftPresentation(a.matrix.transpose()), a.group
    )
    left_t = left_reduce(transposed).matrix
    right = right_reduce(a).matrix
    return left_t.entries == right.transpose().entries


@dataclass(frozen=True)
class OneBlockCode:
    """One-block map on edge alphabets between two presentations.

    The edge map is total and respects endpoints: it induces a well
    defined map on states, so composable paths go to composable paths.
    """

    source: SftPresentation
    target: SftPresentation
    edge_map: dict

    def __post_init__(self):
        src_edges = set(self.source.edges)
        if set(self.edge_map) != src_edges:
            raise PreconditionError("edge map must be total on the source edge alphabet")
        state_map = {}
        for e, f in self.edge_map.items():
            if not self.target.has_edge(f):
                raise PreconditionError(f"image {f} of edge {e} is not a target edge")
            for src_state, dst_state in ((e[0], f[0]), (e[1], f[1])):
                seen = state_map.setdefault(src_state, dst_state)
                if seen != dst_state:
                    raise PreconditionError(
                        f"edge map does not induce a state map (state {src_state} goes to both {seen} and {dst_state})"
                    )
        object.__setattr__(self, "_state_map", state_map)

    def state_image(self, i: int) -> int:
        return self._state_map[i]

    def apply_path(self, edges):
        return tuple(self.edge_map[tuple(e)] for e in edges)

    def is_right_resolving(self) -> bool:
        for es in self.source.out_edges:
            images = [self.edge_map[e] for e in es]
            if len(set(images)) != len(images):
                return False
        return True

    @classmethod
    def identity(cls, p: SftPresentation) -> "OneBlockCode":
        return cls(p, p, {e: e for e in p.edges})


def build_eta(a: PermutationAction) -> OneBlockCode:
    """Canonical right-resolving factor map onto the right-reduced shift.

    For each state i and each target orbit Gj, the edges from i into Gj
    are ordered by target state and assigned multiplicity indices
    0, 1, 2, ... in that order.  Any choice of bijections would do; this
    one is a convention, fixed so results are reproducible.
    """
    reduced = right_reduce(a)
    target = reduced.presentation
    os_ = a.orbits
    rows = a.matrix.entries
    edge_map = {}
    for i in range(a.group.degree):
        for o, orbit in enumerate(os_.orbits):
            targets = [j for j in orbit if rows[i][j]]
            for c, j in enumerate(targets):
                edge_map[(i, j, 0)] = (os_.orbit_of[i], o, c)
    code = OneBlockCode(a.presentation, target, edge_map)
    assert code.is_right_resolving(), "the canonical ordering is right-resolving by construction"
    return code
