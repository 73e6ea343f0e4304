"""Finite permutation groups acting on zero-one presentations by symbol
permutations.

An action is valid when every group element g satisfies the invariance law
A(gi, gj) = A(i, j), so that g induces a one-block automorphism of the
shift.  Orbits, stabilizers and fixed-state submatrices of a valid action
drive the reduced-shift and orbit-counting machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lcm

from .errors import InputError, LimitExceededError, PreconditionError
from .matrices import IntMatrix, RectMatrix
from .sft import CycleWord, SftPresentation


def _check_perm(perm, degree: int):
    p = tuple(perm)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise InputError(f"{perm!r} is not a permutation of 0..{degree - 1}")
    return p


def compose(p, q):
    """Permutation product: apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


def invert(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


@dataclass(frozen=True)
class PermGroup:
    """A finite group of permutations of 0..degree-1.

    Element 0 is the identity; the element order is part of the value (it
    pins down selector matrices and transported actions), so construction
    preserves the order it is given.
    """

    degree: int
    elements: tuple

    def __post_init__(self):
        elements = tuple(_check_perm(p, self.degree) for p in self.elements)
        if not elements:
            raise InputError("a permutation group needs at least the identity")
        if elements[0] != tuple(range(self.degree)):
            raise InputError("element 0 must be the identity permutation")
        if len(set(elements)) != len(elements):
            raise InputError("group elements must be pairwise distinct")
        object.__setattr__(self, "elements", elements)
        index = {p: k for k, p in enumerate(elements)}
        mult = []
        for p in elements:
            row = []
            for q in elements:
                prod = compose(p, q)
                if prod not in index:
                    raise InputError("element list is not closed under composition")
                row.append(index[prod])
            mult.append(tuple(row))
        inv = []
        for p in elements:
            ip = invert(p)
            if ip not in index:
                raise InputError("element list is not closed under inversion")
            inv.append(index[ip])
        object.__setattr__(self, "mult", tuple(mult))
        object.__setattr__(self, "inv", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.elements)

    def apply(self, g: int, state: int) -> int:
        return self.elements[g][state]

    def element_order(self, g: int) -> int:
        k, acc = 1, g
        while acc != 0:
            acc = self.mult[acc][g]
            k += 1
        return k

    def exponent(self) -> int:
        return lcm(*[self.element_order(g) for g in range(self.order)])

    def index_of(self, perm) -> int:
        p = tuple(perm)
        for k, q in enumerate(self.elements):
            if q == p:
                return k
        raise InputError(f"{perm!r} is not an element of the group")

    def permutation_matrix(self, g: int) -> RectMatrix:
        """Matrix P with P(i, gi) = 1, so invariance reads P A P^t = A."""
        n = self.degree
        p = self.elements[g]
        return RectMatrix(
            tuple(tuple(1 if j == p[i] else 0 for j in range(n)) for i in range(n))
        )

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, (tuple(range(degree)),))

    @classmethod
    def from_elements(cls, degree: int, elements) -> "PermGroup":
        return cls(degree, tuple(elements))


def group_from_generators(degree: int, gens, limit: int = 100000) -> PermGroup:
    """Close a generating set of permutations under composition.

    Breadth-first over products: the identity first, then each layer of
    new elements sorted lexicographically, which makes element indices
    reproducible.  Raises LimitExceededError past ``limit`` elements.
    """
    gens = [_check_perm(g, degree) for g in gens]
    identity = tuple(range(degree))
    seen = {identity}
    ordered = [identity]
    frontier = [identity]
    while frontier:
        layer = set()
        for p in frontier:
            for g in gens:
                q = compose(p, g)
                if q not in seen:
                    layer.add(q)
        frontier = sorted(layer)
        for q in frontier:
            seen.add(q)
            ordered.append(q)
            if len(ordered) > limit:
                raise LimitExceededError(f"group closure exceeds limit {limit}")
    return PermGroup(degree, tuple(ordered))


@dataclass(frozen=True)
class PermutationAction:
    """A PermGroup acting on a zero-one presentation by symbol permutations.

    Construction validates the invariance law for every element and state
    pair, so a value of this type is always a valid action.
    """

    presentation: SftPresentation
    group: PermGroup

    def __post_init__(self):
        p, g = self.presentation, self.group
        if p.is_empty:
            raise PreconditionError("cannot act on the empty presentation")
        if not p.is_zero_one():
            raise PreconditionError(
                "permutation actions need a zero-one matrix; recode with higher_block first"
            )
        if g.degree != p.num_states:
            raise InputError(
                f"group degree {g.degree} does not match state count {p.num_states}"
            )
        rows = p.matrix.entries
        n = p.num_states
        for k, perm in enumerate(g.elements):
            for i in range(n):
                for j in range(n):
                    if rows[perm[i]][perm[j]] != rows[i][j]:
                        raise PreconditionError(
                            f"invariance violated: element {k} sends entry ({i + 1},{j + 1})="
                            f"{rows[i][j]} to ({perm[i] + 1},{perm[j] + 1})={rows[perm[i]][perm[j]]}"
                        )

    @property
    def matrix(self) -> IntMatrix:
        return self.presentation.matrix

    def apply_edge(self, g: int, edge):
        i, j, c = edge
        return (self.group.apply(g, i), self.group.apply(g, j), c)

    def apply_word(self, g: int, edges):
        return tuple(self.apply_edge(g, e) for e in edges)

    @cached_property
    def orbits(self) -> "OrbitStructure":
        return _orbit_structure(self)


def validate_action(p: SftPresentation, g: PermGroup) -> PermutationAction:
    """Check the invariance law A(gi, gj) = A(i, j) and return the action."""
    return PermutationAction(p, g)


@dataclass(frozen=True)
class OrbitStructure:
    """Orbits, representatives, state stabilizers and kernel of an action.

    Orbits list members in increasing index and are ordered by least
    member; the representative of an orbit is its least member.
    Stabilizers and the kernel are sorted tuples of element indices.
    """

    orbits: tuple
    representatives: tuple
    orbit_of: tuple
    stabilizers: tuple
    kernel: tuple

    @property
    def num_orbits(self) -> int:
        return len(self.orbits)


def _orbit_structure(a: PermutationAction) -> OrbitStructure:
    g = a.group
    n = g.degree
    orbit_of = [-1] * n
    orbits = []
    for i in range(n):
        if orbit_of[i] >= 0:
            continue
        members = sorted({g.apply(k, i) for k in range(g.order)})
        idx = len(orbits)
        for m in members:
            orbit_of[m] = idx
        orbits.append(tuple(members))
    stabilizers = tuple(
        tuple(k for k in range(g.order) if g.apply(k, i) == i) for i in range(n)
    )
    kernel = tuple(
        k for k in range(g.order) if all(g.apply(k, i) == i for i in range(n))
    )
    structure = OrbitStructure(
        orbits=tuple(orbits),
        representatives=tuple(members[0] for members in orbits),
        orbit_of=tuple(orbit_of),
        stabilizers=stabilizers,
        kernel=kernel,
    )
    for i in range(n):
        orb = structure.orbits[structure.orbit_of[i]]
        assert len(orb) * len(structure.stabilizers[i]) == g.order, "orbit-stabilizer identity"
    return structure


def orbit_structure(a: PermutationAction) -> OrbitStructure:
    return a.orbits


def fixed_submatrix(a: PermutationAction, g: int) -> IntMatrix:
    """Principal submatrix on the states fixed by element g.

    When g fixes no state the 1x1 zero matrix stands in for the empty
    subshift.
    """
    if not 0 <= g < a.group.order:
        raise InputError(f"element index {g} out of range")
    perm = a.group.elements[g]
    fixed = [i for i in range(a.group.degree) if perm[i] == i]
    if not fixed:
        return IntMatrix(((0,),))
    rows = a.matrix.entries
    labels = None
    if a.matrix.labels is not None:
        labels = tuple(a.matrix.labels[i] for i in fixed)
    return IntMatrix(
        tuple(tuple(rows[i][j] for j in fixed) for i in fixed), labels=labels
    )


def word_stabilizer(a: PermutationAction, w: CycleWord):
    """Intersection of the state stabilizers along a cycle; equals the
    stabilizer of the periodic point the cycle presents."""
    for e in w.edges:
        if not a.presentation.has_edge(e):
            raise PreconditionError(f"edge {e} does not belong to the presentation")
    stab = set(range(a.group.order))
    for s in w.states:
        stab &= set(a.orbits.stabilizers[s])
    return tuple(sorted(stab))
