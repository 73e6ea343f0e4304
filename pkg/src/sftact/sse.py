"""Strong shift equivalence certificates and action-compatible recodings.

An elementary certificate is a pair (R, S) of nonnegative integer matrices
with R S = A and S R = B; chains of these witness topological conjugacy.
For zero-one data the certificate induces a canonical two-block conjugacy.
When both matrices carry permutation actions intertwined by R and S, the
certificate transports to one between the right-reduced matrices
(the pair (U R V', U' S V) built from the selector matrices).

State splittings supply the certificates this package generates itself:
out-splittings partition the outgoing edges of each state, in-splittings
the incoming ones, and a partition compatible with the group action
transports the action to the split presentation.  Repeated complete
out-splittings realize higher-block recodings.  Finally, a right-resolving
one-block factor map of actions induces a commuting square of
right-resolving maps between the original and reduced shifts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, PreconditionError
from .matrices import IntMatrix, RectMatrix, mat_mul
from .action import PermGroup, PermutationAction
from .reduce import OneBlockCode, build_eta, right_reduce
from .sft import SftPresentation


@dataclass(frozen=True)
class ElementarySse:
    """Claimed elementary strong shift equivalence between a and b.

    The products are not enforced at construction; verify_elementary_sse
    checks them, so invalid certificates can be reported rather than
    rejected while being built.
    """

    a: IntMatrix
    b: IntMatrix
    r: RectMatrix
    s: RectMatrix

    def __post_init__(self):
        if self.r.rows != self.a.dim or self.r.cols != self.b.dim:
            raise InputError(
                f"R must be {self.a.dim}x{self.b.dim}, got {self.r.rows}x{self.r.cols}"
            )
        if self.s.rows != self.b.dim or self.s.cols != self.a.dim:
            raise InputError(
                f"S must be {self.b.dim}x{self.a.dim}, got {self.s.rows}x{self.s.cols}"
            )


@dataclass(frozen=True)
class SseChain:
    """Chain of elementary equivalences with matching endpoints."""

    links: tuple

    def __post_init__(self):
        links = tuple(self.links)
        if not links:
            raise InputError("a chain needs at least one link")
        for e, f in zip(links, links[1:]):
            if e.b.entries != f.a.entries:
                raise InputError("consecutive chain endpoints do not agree")
        object.__setattr__(self, "links", links)

    @property
    def a(self) -> IntMatrix:
        return self.links[0].a

    @property
    def b(self) -> IntMatrix:
        return self.links[-1].b


def verify_elementary_sse(e: ElementarySse) -> bool:
    """True iff R S = A and S R = B hold exactly."""
    rs = mat_mul(e.r, e.s)
    sr = mat_mul(e.s, e.r)
    return rs.entries == e.a.entries and sr.entries == e.b.entries


def verify_chain(chain: SseChain) -> bool:
    return all(verify_elementary_sse(link) for link in chain.links)


def identity_sse(a: IntMatrix) -> ElementarySse:
    ident = RectMatrix(IntMatrix.identity(a.dim).entries)
    return ElementarySse(a=a, b=a, r=a.to_rect(), s=ident)


@dataclass(frozen=True)
class TwoBlockConjugacy:
    """The conjugacy canonically attached to a zero-one certificate.

    ``forward`` sends composable source edge pairs to target edges (a
    two-block map with anticipation one); ``backward`` is its mirror.
    Composing the two trims one edge from each end of a finite path:
    apply_backward(apply_forward(p)) == p[1:-1].
    """

    source: SftPresentation
    target: SftPresentation
    forward: dict
    backward: dict

    def apply_forward(self, edges):
        return self._apply(self.forward, edges)

    def apply_backward(self, edges):
        return self._apply(self.backward, edges)

    @staticmethod
    def _apply(table, edges):
        edges = tuple(tuple(e) for e in edges)
        if len(edges) < 2:
            raise InputError("need at least two edges to apply a two-block map")
        return tuple(table[(e, f)] for e, f in zip(edges, edges[1:]))


def induced_conjugacy(e: ElementarySse) -> TwoBlockConjugacy:
    """Resolve a zero-one certificate into its two-block conjugacy tables.

    For each nonzero A(i, j) there must be a unique state k of B with
    R(i, k) = S(k, j) = 1; the failure of that uniqueness means the
    certificate is not of the canonical zero-one form.
    """
    for name, m in (("a", e.a), ("b", e.b)):
        if not m.is_zero_one():
            raise PreconditionError(f"matrix {name} is not zero-one")
    for name, m in (("r", e.r), ("s", e.s)):
        if any(x > 1 for row in m.entries for x in row):
            raise PreconditionError(f"matrix {name} is not zero-one")

    na, nb = e.a.dim, e.b.dim
    r, s = e.r.entries, e.s.entries

    def resolve(i, j):
        ks = [k for k in range(nb) if r[i][k] and s[k][j]]
        if len(ks) != 1:
            raise PreconditionError(
                f"certificate does not resolve edge ({i + 1},{j + 1}) uniquely: candidates {[k + 1 for k in ks]}"
            )
        return ks[0]

    k_of = {}
    for i in range(na):
        for j in range(na):
            if e.a.entries[i][j]:
                k_of[(i, j)] = resolve(i, j)

    if not verify_elementary_sse(e):
        raise PreconditionError("certificate products do not hold; nothing to induce")

    def resolve_back(k, l):
        js = [j for j in range(na) if s[k][j] and r[j][l]]
        assert len(js) == 1, "S R = B with zero-one B forces uniqueness"
        return js[0]

    j_of = {}
    for k in range(nb):
        for l in range(nb):
            if e.b.entries[k][l]:
                j_of[(k, l)] = resolve_back(k, l)

    src = SftPresentation(e.a)
    dst = SftPresentation(e.b)
    forward = {}
    for edge1 in src.edges:
        for edge2 in src.out_edges[edge1[1]]:
            k1 = k_of[(edge1[0], edge1[1])]
            k2 = k_of[(edge2[0], edge2[1])]
            assert e.b.entries[k1][k2], "resolved states must be adjacent in B"
            forward[(edge1, edge2)] = (k1, k2, 0)
    backward = {}
    for edge1 in dst.edges:
        for edge2 in dst.out_edges[edge1[1]]:
            j1 = j_of[(edge1[0], edge1[1])]
            j2 = j_of[(edge2[0], edge2[1])]
            assert e.a.entries[j1][j2], "resolved states must be adjacent in A"
            backward[(edge1, edge2)] = (j1, j2, 0)
    return TwoBlockConjugacy(source=src, target=dst, forward=forward, backward=backward)


def _check_intertwining(e: ElementarySse, phi: PermutationAction, psi: PermutationAction):
    if phi.group.order != psi.group.order:
        raise PreconditionError("the two actions must be actions of the same group")
    for g in range(phi.group.order):
        p_phi = phi.group.permutation_matrix(g)
        p_psi = psi.group.permutation_matrix(g)
        if mat_mul(e.r, p_psi).entries != mat_mul(p_phi, e.r).entries:
            raise PreconditionError(f"R does not intertwine the actions at element {g}")
        if mat_mul(e.s, p_phi).entries != mat_mul(p_psi, e.s).entries:
            raise PreconditionError(f"S does not intertwine the actions at element {g}")


def transport_certificate(
    e: ElementarySse, phi: PermutationAction, psi: PermutationAction
) -> ElementarySse:
    """Transport a certificate between actions to the reduced matrices.

    Requires R P(g) = P(g) R and S P(g) = P(g) S for every group element
    (with the permutation matrices of the respective actions); the
    transported pair is (U R V', U' S V) built from the selectors of the
    two reductions, and is verified before being returned.
    """
    if e.a.entries != phi.matrix.entries or e.b.entries != psi.matrix.entries:
        raise InputError("certificate endpoints do not match the action matrices")
    if not verify_elementary_sse(e):
        raise PreconditionError("certificate does not verify; cannot transport")
    _check_intertwining(e, phi, psi)
    red_a = right_reduce(phi)
    red_b = right_reduce(psi)
    r2 = mat_mul(mat_mul(red_a.u_selector, e.r), red_b.v_selector)
    s2 = mat_mul(mat_mul(red_b.u_selector, e.s), red_a.v_selector)
    out = ElementarySse(a=red_a.matrix, b=red_b.matrix, r=r2, s=s2)
    assert verify_elementary_sse(out), "transported certificate must verify"
    return out


@dataclass(frozen=True)
class SplitData:
    """Ordered edge partitions, one per state, for a state splitting.

    ``direction`` is "out" (partition outgoing edges) or "in" (incoming).
    Blocks are tuples of edge triples; they must cover the relevant edges
    of each state, be nonempty and pairwise disjoint.
    """

    direction: str
    partitions: tuple

    def __post_init__(self):
        if self.direction not in ("out", "in"):
            raise InputError(f"unknown split direction {self.direction!r}")
        parts = tuple(
            tuple(tuple(tuple(edge) for edge in block) for block in state_blocks)
            for state_blocks in self.partitions
        )
        object.__setattr__(self, "partitions", parts)

    @classmethod
    def complete(cls, p: SftPresentation, direction: str) -> "SplitData":
        """One singleton block per edge (the full splitting)."""
        table = p.out_edges if direction == "out" else p.in_edges
        return cls(direction, tuple(tuple((e,) for e in es) for es in table))

    @classmethod
    def trivial(cls, p: SftPresentation, direction: str) -> "SplitData":
        """One block per state (no splitting at all)."""
        table = p.out_edges if direction == "out" else p.in_edges
        return cls(direction, tuple((tuple(es),) for es in table))


def _validate_split(a: PermutationAction, d: SplitData):
    p = a.presentation
    table = p.out_edges if d.direction == "out" else p.in_edges
    if len(d.partitions) != p.num_states:
        raise InputError("split data must give a partition for every state")
    for i, blocks in enumerate(d.partitions):
        edges = [e for block in blocks for e in block]
        if any(not block for block in blocks):
            raise InputError(f"state {i + 1} has an empty partition block")
        if sorted(edges) != sorted(table[i]) or len(edges) != len(set(edges)):
            raise InputError(
                f"blocks at state {i + 1} do not partition its {d.direction}-edges"
            )
    # G-compatibility: each element carries the partition at i blockwise
    # onto the partition at gi.
    for g in range(a.group.order):
        for i, blocks in enumerate(d.partitions):
            gi = a.group.apply(g, i)
            target_blocks = {frozenset(b) for b in d.partitions[gi]}
            for block in blocks:
                image = frozenset(a.apply_edge(g, e) for e in block)
                if image not in target_blocks:
                    raise PreconditionError(
                        f"partition is not action-compatible: element {g} does not carry "
                        f"a block at state {i + 1} onto a block at state {gi + 1}"
                    )


def _canonical_blocks(d: SplitData):
    """Blocks of each state sorted by least edge; fixes the state order of
    the split presentation."""
    return tuple(tuple(sorted(blocks, key=min)) for blocks in d.partitions)


def _split_common(a: PermutationAction, d: SplitData):
    _validate_split(a, d)
    blocks = _canonical_blocks(d)
    new_states = [(i, p) for i, bs in enumerate(blocks) for p in range(len(bs))]
    index = {sp: k for k, sp in enumerate(new_states)}
    labels = tuple(f"{a.presentation.label(i)}.{p + 1}" for i, p in new_states)
    # transported permutations: g.(i, p) = (gi, position of the image block)
    elements = []
    for g in range(a.group.order):
        perm = []
        for i, p in new_states:
            gi = a.group.apply(g, i)
            image = frozenset(a.apply_edge(g, e) for e in blocks[i][p])
            q = next(
                qq for qq, blk in enumerate(blocks[gi]) if frozenset(blk) == image
            )
            perm.append(index[(gi, q)])
        elements.append(tuple(perm))
    group = PermGroup.from_elements(len(new_states), elements)
    return blocks, new_states, index, labels, group


def out_split(a: PermutationAction, d: SplitData):
    """Out-splitting of an action along a G-compatible edge partition.

    Returns the transported action on the split presentation and the
    elementary certificate (division matrix, edge-count matrix) linking
    the two matrices; the transport laws used by transport_certificate hold
    by construction.
    """
    if d.direction != "out":
        raise InputError("out_split needs an out-partition")
    blocks, new_states, index, labels, group = _split_common(a, d)
    n = a.presentation.num_states
    m = len(new_states)
    split_entries = [[0] * m for _ in range(m)]
    for (i, p), k in index.items():
        member_targets = {e[1] for e in blocks[i][p]}
        for (j, q), k2 in index.items():
            if j in member_targets:
                split_entries[k][k2] = 1
    split_matrix = IntMatrix(tuple(tuple(r) for r in split_entries), labels=labels)
    r = RectMatrix(
        tuple(tuple(1 if i == j else 0 for (j, q) in new_states) for i in range(n))
    )
    s = RectMatrix(
        tuple(
            tuple(1 if (i, j, 0) in blocks[i][p] else 0 for j in range(n))
            for (i, p) in new_states
        )
    )
    cert = ElementarySse(a=a.matrix, b=split_matrix, r=r, s=s)
    assert verify_elementary_sse(cert), "split certificate must verify"
    action = PermutationAction(SftPresentation(split_matrix), group)
    return action, cert


def in_split(a: PermutationAction, d: SplitData):
    """In-splitting: the mirror of out_split on incoming edges."""
    if d.direction != "in":
        raise InputError("in_split needs an in-partition")
    blocks, new_states, index, labels, group = _split_common(a, d)
    n = a.presentation.num_states
    m = len(new_states)
    split_entries = [[0] * m for _ in range(m)]
    for (i, p), k in index.items():
        for (j, q), k2 in index.items():
            if (i, j, 0) in blocks[j][q]:
                split_entries[k][k2] = 1
    split_matrix = IntMatrix(tuple(tuple(r) for r in split_entries), labels=labels)
    r = RectMatrix(
        tuple(
            tuple(1 if (l, i, 0) in blocks[i][p] else 0 for (i, p) in new_states)
            for l in range(n)
        )
    )
    s = RectMatrix(
        tuple(tuple(1 if i == l else 0 for l in range(n)) for (i, p) in new_states)
    )
    cert = ElementarySse(a=a.matrix, b=split_matrix, r=r, s=s)
    assert verify_elementary_sse(cert), "split certificate must verify"
    action = PermutationAction(SftPresentation(split_matrix), group)
    return action, cert


def higher_block_action(a: PermutationAction, n: int):
    """Transport an action to its n-block presentation by repeated complete
    out-splittings.

    Returns (action, chain, stages): the transported action, the
    certificate chain from the original matrix to the n-block matrix, and
    every intermediate action including both endpoints.
    """
    if n < 2:
        raise InputError("block length must be at least 2")
    stages = [a]
    links = []
    current = a
    for _ in range(n - 1):
        split = SplitData.complete(current.presentation, "out")
        current, cert = out_split(current, split)
        stages.append(current)
        links.append(cert)
    return current, SseChain(tuple(links)), tuple(stages)


@dataclass(frozen=True)
class ActionFactorSquare:
    """Commuting square of right-resolving one-block codes.

    eta maps the source action to the target action, eta_bar the reduced
    source to the reduced target, and theta1/theta2 are the factor maps
    onto the respective reduced shifts, with theta2 o eta = eta_bar o theta1.
    """

    eta: OneBlockCode
    eta_bar: OneBlockCode
    theta1: OneBlockCode
    theta2: OneBlockCode


def factor_square(
    src: PermutationAction, dst: PermutationAction, state_map
) -> ActionFactorSquare:
    """Complete a right-resolving equivariant factor map to a commuting
    square with the reduced shifts.

    ``state_map`` gives the image state of each source state.  The map
    must be a graph homomorphism, right-resolving (edges with a common
    initial state keep distinct images; violations are reported with the
    colliding two-blocks), equivariant for index-paired group elements,
    and onto in the strong sense that edges from i into an orbit Gj
    biject with edges from the image of i into the image orbit.  eta_bar
    and theta2 use the canonical ordering of build_eta; theta1 is then the
    unique map closing the square.
    """
    eta_states = tuple(state_map)
    ns, nd = src.presentation.num_states, dst.presentation.num_states
    if len(eta_states) != ns or any(not 0 <= v < nd for v in eta_states):
        raise InputError("state map must send every source state to a target state")
    src_rows = src.matrix.entries
    dst_rows = dst.matrix.entries

    for i in range(ns):
        for j in range(ns):
            if src_rows[i][j] and not dst_rows[eta_states[i]][eta_states[j]]:
                raise PreconditionError(
                    f"state map is not a graph homomorphism: edge ({i + 1},{j + 1}) has no image"
                )
    for i in range(ns):
        images = {}
        for j in range(ns):
            if src_rows[i][j]:
                prior = images.setdefault(eta_states[j], j)
                if prior != j:
                    raise PreconditionError(
                        f"not right-resolving: 2-blocks ({i + 1},{prior + 1}) and "
                        f"({i + 1},{j + 1}) collide"
                    )
    if src.group.order != dst.group.order:
        raise PreconditionError("the two actions must be actions of the same group")
    for g in range(src.group.order):
        for i in range(ns):
            if eta_states[src.group.apply(g, i)] != dst.group.apply(g, eta_states[i]):
                raise PreconditionError(
                    f"state map does not intertwine the actions at element {g}"
                )
    if set(eta_states) != set(range(nd)):
        raise PreconditionError("state map is not onto the target states")

    src_orbits = src.orbits
    dst_orbits = dst.orbits
    for i in range(ns):
        for o, orbit in enumerate(src_orbits.orbits):
            count = sum(src_rows[i][j] for j in orbit)
            image_orbit = dst_orbits.orbits[dst_orbits.orbit_of[eta_states[orbit[0]]]]
            image_count = sum(dst_rows[eta_states[i]][j] for j in image_orbit)
            if count != image_count:
                raise PreconditionError(
                    f"edges from state {i + 1} into orbit {o + 1} do not biject with their images"
                )

    eta = OneBlockCode(
        src.presentation,
        dst.presentation,
        {(i, j, 0): (eta_states[i], eta_states[j], 0) for (i, j, _) in src.presentation.edges},
    )
    theta1_target = right_reduce(src).presentation
    theta2 = build_eta(dst)
    # eta_bar preserves multiplicity indices; the bijection check above
    # makes this well defined and right-resolving.
    eta_bar_map = {}
    for (oi, oj, c) in theta1_target.edges:
        rep = src_orbits.representatives[oi]
        oj_image = dst_orbits.orbit_of[eta_states[src_orbits.orbits[oj][0]]]
        eta_bar_map[(oi, oj, c)] = (dst_orbits.orbit_of[eta_states[rep]], oj_image, c)
    eta_bar = OneBlockCode(theta1_target, theta2.target, eta_bar_map)
    theta1_map = {}
    for e in src.presentation.edges:
        image = theta2.edge_map[eta.edge_map[e]]
        oi = src_orbits.orbit_of[e[0]]
        oj = src_orbits.orbit_of[e[1]]
        theta1_map[e] = (oi, oj, image[2])
    theta1 = OneBlockCode(src.presentation, theta1_target, theta1_map)

    for code, name in ((eta, "eta"), (eta_bar, "eta_bar"), (theta1, "theta1"), (theta2, "theta2")):
        if not code.is_right_resolving():
            raise PreconditionError(f"{name} is not right-resolving")
    for e in src.presentation.edges:
        for f in src.presentation.out_edges[e[1]]:
            left = theta2.apply_path(eta.apply_path((e, f)))
            right = eta_bar.apply_path(theta1.apply_path((e, f)))
            assert left == right, "square must commute on all 2-blocks"
    return ActionFactorSquare(eta=eta, eta_bar=eta_bar, theta1=theta1, theta2=theta2)
