"""Shared fixtures and randomized generators for the test suite."""

from itertools import permutations

from sftact import (
    IntMatrix,
    PermutationAction,
    SftPresentation,
    SplitData,
    group_from_generators,
    is_irreducible,
    trim_essential,
    validate_action,
)

# Six-state matrix with the order-four action generated by (1 2)(3 4 5 6).
SIX_STATE_A = IntMatrix((
    (1, 0, 1, 0, 1, 0),
    (0, 1, 0, 1, 0, 1),
    (1, 1, 1, 0, 0, 0),
    (1, 1, 0, 1, 0, 0),
    (1, 1, 0, 0, 1, 0),
    (1, 1, 0, 0, 0, 1),
))
SIX_STATE_GEN = (1, 0, 3, 4, 5, 2)

# Five-state factor of the six-state fixture (first two states identified),
# with the induced order-four action cycling the last four states.
FIVE_STATE_B = IntMatrix((
    (1, 1, 1, 1, 1),
    (1, 1, 0, 0, 0),
    (1, 0, 1, 0, 0),
    (1, 0, 0, 1, 0),
    (1, 0, 0, 0, 1),
))
FIVE_STATE_GEN = (0, 2, 3, 4, 1)

# Reducible three-state companion with the swap of the first two states.
REDUCIBLE_A = IntMatrix(((1, 0, 1), (0, 1, 1), (0, 0, 1)))

# Three-state matrix whose order-two action swaps the last two states.
THREE_STATE_A = IntMatrix(((1, 1, 1), (1, 1, 0), (1, 0, 1)))

GOLDEN_MEAN = IntMatrix(((1, 1), (1, 0)))
FULL_TWO_SHIFT = IntMatrix(((1, 1), (1, 1)))

# Triangle graph without self-loop at state 1; swapping states 2 and 3 fixes
# state 1, whose stabilizer then acts transitively on its two in-edges.
TRIANGLE_A = IntMatrix(((0, 1, 1), (1, 0, 1), (1, 1, 0)))


def six_state_action() -> PermutationAction:
    return validate_action(
        SftPresentation.from_matrix(SIX_STATE_A),
        group_from_generators(6, [SIX_STATE_GEN]),
    )


def five_state_action() -> PermutationAction:
    return validate_action(
        SftPresentation.from_matrix(FIVE_STATE_B),
        group_from_generators(5, [FIVE_STATE_GEN]),
    )


def reducible_action() -> PermutationAction:
    return validate_action(
        SftPresentation.from_matrix(REDUCIBLE_A),
        group_from_generators(3, [(1, 0, 2)]),
    )


def three_state_action() -> PermutationAction:
    return validate_action(
        SftPresentation.from_matrix(THREE_STATE_A),
        group_from_generators(3, [(0, 2, 1)]),
    )


def swapped_two_shift() -> PermutationAction:
    return validate_action(
        SftPresentation.from_matrix(FULL_TWO_SHIFT),
        group_from_generators(2, [(1, 0)]),
    )


def triangle_action() -> PermutationAction:
    return validate_action(
        SftPresentation.from_matrix(TRIANGLE_A),
        group_from_generators(3, [(0, 2, 1)]),
    )


def conjugation_action() -> PermutationAction:
    """Full shift on the six elements of the order-six symmetric group,
    acted on by conjugation."""
    elems = list(permutations(range(3)))
    index = {e: k for k, e in enumerate(elems)}

    def compose(p, q):
        return tuple(p[q[i]] for i in range(3))

    def invert(p):
        out = [0] * 3
        for i, j in enumerate(p):
            out[j] = i
        return tuple(out)

    def conj_perm(h):
        return tuple(index[compose(compose(invert(h), elems[v]), h)] for v in range(6))

    full = IntMatrix(tuple(tuple(1 for _ in elems) for _ in elems))
    group = group_from_generators(6, [conj_perm(elems[1]), conj_perm(elems[3])])
    return validate_action(SftPresentation.from_matrix(full), group)


def standard_actions():
    return [
        six_state_action(),
        five_state_action(),
        reducible_action(),
        three_state_action(),
        swapped_two_shift(),
        triangle_action(),
        conjugation_action(),
    ]


def perm_order(perm) -> int:
    order = 1
    current = perm
    identity = tuple(range(len(perm)))
    while current != identity:
        current = tuple(perm[i] for i in current)
        order += 1
    return order


def random_action(rng, max_states=5, max_order=4, density=None, require_irreducible=False):
    """A valid action on an essential zero-one presentation: draw a
    permutation of bounded order, fill its entry orbits with random bits,
    trim, and restrict the permutation to the surviving states."""
    while True:
        n = rng.randint(2, max_states)
        perm = tuple(rng.sample(range(n), n))
        if perm_order(perm) > max_order:
            continue
        d = density if density is not None else rng.uniform(0.3, 0.55)
        entries = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if entries[i][j] is not None:
                    continue
                bit = 1 if rng.random() < d else 0
                a, b = i, j
                while entries[a][b] is None:
                    entries[a][b] = bit
                    a, b = perm[a], perm[b]
        matrix = IntMatrix(tuple(tuple(row) for row in entries))
        trimmed, kept = trim_essential(matrix)
        if trimmed.num_states < 2:
            continue
        if any(perm[k] not in kept for k in kept):
            continue
        pos = {orig: local for local, orig in enumerate(kept)}
        sub_perm = tuple(pos[perm[orig]] for orig in kept)
        presentation = SftPresentation.from_matrix(IntMatrix(trimmed.matrix.entries))
        if require_irreducible and not is_irreducible(presentation):
            continue
        group = group_from_generators(len(kept), [sub_perm])
        if group.order > max_order:
            continue
        return PermutationAction(presentation, group)


def random_compatible_split(rng, act: PermutationAction, direction: str) -> SplitData:
    """Random action-compatible split data: blocks at each orbit
    representative are unions of stabilizer orbits of its edges, pushed to
    the other orbit members by the action."""
    p = act.presentation
    table = p.out_edges if direction == "out" else p.in_edges
    os_ = act.orbits
    partitions = [None] * p.num_states
    for orbit in os_.orbits:
        rep = orbit[0]
        stab = os_.stabilizers[rep]
        remaining = set(table[rep])
        classes = []
        while remaining:
            e = min(remaining)
            cls = tuple(sorted({act.apply_edge(g, e) for g in stab}))
            classes.append(cls)
            remaining -= set(cls)
        rng.shuffle(classes)
        blocks = []
        for cls in classes:
            if blocks and rng.random() < 0.5:
                k = rng.randrange(len(blocks))
                blocks[k] = tuple(sorted(blocks[k] + cls))
            else:
                blocks.append(cls)
        for s in orbit:
            g = next(gg for gg in range(act.group.order) if act.group.apply(gg, rep) == s)
            partitions[s] = tuple(
                tuple(sorted(act.apply_edge(g, e) for e in block)) for block in blocks
            )
    return SplitData(direction, tuple(partitions))


def orbit_preserving_in_split(act: PermutationAction):
    """In-split data whose transported action keeps the orbit count: when a
    representative's stabilizer is transitive on its in-edges, split them
    into singletons; otherwise keep one block.  Returns (split, nontrivial)."""
    p = act.presentation
    os_ = act.orbits
    partitions = [None] * p.num_states
    nontrivial = False
    for orbit in os_.orbits:
        rep = orbit[0]
        stab = os_.stabilizers[rep]
        in_edges = p.in_edges[rep]
        stab_orbit = {act.apply_edge(g, in_edges[0]) for g in stab}
        if len(in_edges) > 1 and stab_orbit == set(in_edges):
            blocks = tuple((e,) for e in in_edges)
            nontrivial = True
        else:
            blocks = (tuple(in_edges),)
        for s in orbit:
            g = next(gg for gg in range(act.group.order) if act.group.apply(gg, rep) == s)
            partitions[s] = tuple(
                tuple(sorted(act.apply_edge(g, e) for e in block)) for block in blocks
            )
    return SplitData("in", tuple(partitions)), nontrivial


def amalgamation_state_map(split_action: PermutationAction):
    """Recover the (i, block) -> i state map from split-state labels."""
    return tuple(
        int(label.rsplit(".", 1)[0]) - 1
        for label in split_action.presentation.matrix.labels
    )


def all_paths(p: SftPresentation, length: int):
    """Every edge path of the given length, lexicographic."""
    out = []
    path = []

    def walk(cur, depth):
        if depth == length:
            out.append(tuple(path))
            return
        for e in p.out_edges[cur]:
            path.append(e)
            walk(e[1], depth + 1)
            path.pop()

    for s in range(p.num_states):
        walk(s, 0)
    return out
