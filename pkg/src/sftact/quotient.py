"""Orbit counting of periodic points and expansivity of the quotient.

The number of group orbits of period-n points averages the fixed-point
counts trace(A_g^n) over the group (Cauchy-Frobenius), and the counts
satisfy the linear recurrence given by the least common multiple of the
polynomials det(I - t A_g).  Separate brute-force enumerations serve as
oracles for both the orbit counts and the period counts of the quotient
dynamical system, which agree with the trace powers of the reduced
matrices.

For irreducible presentations the quotient is either again a shift of
finite type (when the quotient map is constant-to-one) or fails to be
expansive.  The decision procedure used here: the quotient is
nonexpansive exactly when some element outside the kernel fixes a cycle,
since such a cycle and a cycle through all states present periodic points
with different stabilizers, and a witness pair of points that shadow each
other's central blocks at every shift can then be produced for any block
radius.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, PreconditionError
from .matrices import IntPolynomial, char_poly_reciprocal, poly_lcm, trace_of_power, bowen_franks
from .action import PermutationAction, fixed_submatrix
from .reduce import left_reduce, right_reduce
from .sft import CycleWord, SftPresentation, enumerate_cycles, is_irreducible, shortest_path, trim_essential

DEFAULT_CAP = 100000


@dataclass(frozen=True)
class OrbitCountReport:
    """Orbit counts N_1..N_m, the annihilating recurrence polynomial and
    the per-element trace table behind them."""

    counts: tuple
    recurrence: IntPolynomial
    element_traces: tuple

    def __post_init__(self):
        counts = tuple(self.counts)
        traces = tuple(tuple(row) for row in self.element_traces)
        order = len(traces)
        for n, value in enumerate(counts):
            total = sum(row[n] for row in traces)
            if total != value * order:
                raise InputError("orbit counts do not match the trace table")
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "element_traces", traces)


def burnside_counts(a: PermutationAction, m: int) -> OrbitCountReport:
    """Orbit counts of period-n points for n = 1..m by fixed-point averaging.

    The recurrence polynomial is the least common multiple of the
    reciprocal characteristic polynomials of the fixed submatrices; it
    annihilates the sequence of Burnside sums.
    """
    if m < 1:
        raise InputError("need at least one count")
    order = a.group.order
    submatrices = [fixed_submatrix(a, g) for g in range(order)]
    traces = tuple(
        tuple(trace_of_power(sub, n) for n in range(1, m + 1)) for sub in submatrices
    )
    counts = []
    for n in range(m):
        total = sum(row[n] for row in traces)
        assert total % order == 0, "Burnside sums are divisible by the group order"
        counts.append(total // order)
    recurrence = poly_lcm([char_poly_reciprocal(sub) for sub in submatrices])
    return OrbitCountReport(
        counts=tuple(counts), recurrence=recurrence, element_traces=traces
    )


def recurrence_holds(recurrence: IntPolynomial, terms) -> bool:
    """Check that sum_k c_k terms[n - k] = 0 for every window of the sequence."""
    c = recurrence.coefficients
    d = recurrence.degree
    if d < 0:
        raise InputError("the zero polynomial is not a recurrence")
    terms = list(terms)
    for n in range(d, len(terms)):
        if sum(c[k] * terms[n - k] for k in range(d + 1)) != 0:
            return False
    return True


def brute_orbit_counts(a: PermutationAction, m: int, cap: int = DEFAULT_CAP):
    """Oracle for burnside_counts: enumerate period-n points and count
    their orbits under the edgewise action."""
    out = []
    for n in range(1, m + 1):
        words = enumerate_cycles(a.presentation, n, cap)
        seen = set()
        for w in words:
            canonical = min(a.apply_word(g, w.edges) for g in range(a.group.order))
            seen.add(canonical)
        out.append(len(seen))
    return out


def quotient_period_counts(a: PermutationAction, m: int, cap: int = DEFAULT_CAP):
    """Period-n point counts of the quotient dynamical system, n = 1..m.

    A quotient point [x] has period n when the shift of x returns to the
    orbit of x.  Any such x satisfies sigma^n x = g x, so its shift period
    divides n * exponent(G); enumerating cycles of that length with their
    phases captures every witness, and the survivors are grouped into
    orbits.
    """
    exponent = a.group.exponent()
    order = a.group.order
    out = []
    for n in range(1, m + 1):
        length = n * exponent
        words = enumerate_cycles(a.presentation, length, cap)
        orbit_reps = set()
        for w in words:
            shifted = w.edges[n % length:] + w.edges[: n % length]
            if any(a.apply_word(g, w.edges) == shifted for g in range(order)):
                orbit_reps.add(min(a.apply_word(g, w.edges) for g in range(order)))
        out.append(len(orbit_reps))
    return out


@dataclass(frozen=True)
class QuotientClassification:
    """Verdict for the quotient of an irreducible action.

    ``witness`` is None for the constant-to-one verdict; otherwise it is a
    pair (g, cycle) with g outside the kernel and the cycle inside the
    fixed-state subgraph of g.
    """

    verdict: str
    kernel: tuple
    witness: tuple | None

    def __post_init__(self):
        if self.verdict not in ("constant-to-one", "nonexpansive"):
            raise InputError(f"unknown verdict {self.verdict!r}")
        if (self.verdict == "nonexpansive") != (self.witness is not None):
            raise InputError("nonexpansive verdicts need a witness, constant-to-one must not have one")


def _find_cycle(p: SftPresentation):
    """Some cycle of a nonempty essential presentation: follow least
    out-edges from state 0 until a state repeats."""
    seen_at = {0: 0}
    edges = []
    cur = 0
    while True:
        e = p.out_edges[cur][0]
        edges.append(e)
        cur = e[1]
        if cur in seen_at:
            return tuple(edges[seen_at[cur]:])
        seen_at[cur] = len(edges)


def _cycle_in_fixed_subgraph(a: PermutationAction, g: int):
    """A cycle of the presentation lying in the states fixed by g, or None."""
    sub = fixed_submatrix(a, g)
    trimmed, kept = trim_essential(sub)
    if trimmed.is_empty:
        return None
    perm = a.group.elements[g]
    fixed = [i for i in range(a.group.degree) if perm[i] == i]
    original = [fixed[k] for k in kept]
    local_edges = _find_cycle(trimmed)
    return CycleWord(tuple((original[i], original[j], c) for (i, j, c) in local_edges))


def classify_quotient(a: PermutationAction) -> QuotientClassification:
    """Constant-to-one or nonexpansive, for an irreducible presentation.

    Nonexpansive exactly when some element outside the kernel keeps a
    cycle inside its fixed-state subgraph; the element and cycle are
    returned as the witness.
    """
    if not is_irreducible(a.presentation):
        raise PreconditionError("classification needs an irreducible presentation")
    kernel = a.orbits.kernel
    kernel_set = set(kernel)
    for g in range(a.group.order):
        if g in kernel_set:
            continue
        cycle = _cycle_in_fixed_subgraph(a, g)
        if cycle is not None:
            return QuotientClassification(
                verdict="nonexpansive", kernel=kernel, witness=(g, cycle)
            )
    return QuotientClassification(verdict="constant-to-one", kernel=kernel, witness=None)


@dataclass(frozen=True)
class NonexpansiveWitness:
    """Data producing arbitrarily long shadowing pairs in the quotient.

    u is a cycle fixed by g, v a cycle through every state (so g moves
    v), and w, w_prime connect u to v and back.  For every m the pair
    x(m) = v^inf w_prime . u^(2m+1) w v^inf
    y(m) = v^inf w_prime . u^(2m+1) (gw) (gv)^inf
    lies in distinct orbits while every central (2m+1)-block of y(m)
    matches the corresponding block of x(m) or of g x(m).
    """

    action: PermutationAction
    u: tuple
    v: tuple
    w: tuple
    w_prime: tuple
    g: int

    def point_windows(self, m: int):
        """Finite central windows of x(m) and y(m).

        Returns (x_window, y_window, zero_offset); index ``zero_offset``
        of each window is coordinate 0 of the points.
        """
        if m < 1:
            raise InputError("block radius m must be at least 1")
        act = self.action
        u, v, w, wp = self.u, self.v, self.w, self.w_prime
        gw = act.apply_word(self.g, w)
        gv = act.apply_word(self.g, v)
        left_len = len(wp) + 2 * len(v)
        right_len = (2 * m + 1) * len(u) + len(w) + 2 * len(v)
        reps = -(-left_len // len(v)) + 1
        left = (v * reps + wp)[-left_len:]
        x_right = (u * (2 * m + 1) + w + v * (-(-right_len // len(v))))[:right_len]
        y_right = (u * (2 * m + 1) + gw + gv * (-(-right_len // len(v))))[:right_len]
        x_window = tuple(left) + tuple(x_right)
        y_window = tuple(left) + tuple(y_right)
        return x_window, y_window, left_len


def nonexpansive_witness(
    a: PermutationAction, c: QuotientClassification, m: int
) -> tuple:
    """Build a witness for a nonexpansive verdict and its window pair.

    Returns (witness, x_window, y_window, zero_offset) for the given block
    radius m.  The pair is checked before being returned: the two points
    lie in distinct orbits, yet at every offset inside the window the
    central (2m+1)-block of y agrees with that of x or of g x.
    """
    if c.verdict != "nonexpansive":
        raise PreconditionError("witness construction needs a nonexpansive verdict")
    if not is_irreducible(a.presentation):
        raise PreconditionError("witness construction needs an irreducible presentation")
    g, u_cycle = c.witness
    u = u_cycle.edges
    v = _cycle_through_all_states(a.presentation)
    stab_v = set(range(a.group.order))
    for s in {e[0] for e in v}:
        stab_v &= set(a.orbits.stabilizers[s])
    assert g not in stab_v, "g fixes the witness cycle but must move the full cycle"
    w = shortest_path(a.presentation, u[0][0], v[0][0])
    wp = shortest_path(a.presentation, v[0][0], u[0][0])
    assert w is not None and wp is not None, "irreducible graphs connect any two states"
    witness = NonexpansiveWitness(action=a, u=u, v=tuple(v), w=w, w_prime=wp, g=g)
    x_window, y_window, zero = witness.point_windows(m)
    _check_witness_pair(a, witness, x_window, y_window, zero, m)
    return witness, x_window, y_window, zero


def _check_witness_pair(a, witness, x_window, y_window, zero, m):
    order = a.group.order
    for g in range(order):
        if a.apply_word(g, y_window) == x_window:
            raise PreconditionError("witness pair fell into one orbit; construction is broken")
    gx = a.apply_word(witness.g, x_window)
    length = len(x_window)
    for center in range(m, length - m):
        block_y = y_window[center - m : center + m + 1]
        if block_y != x_window[center - m : center + m + 1] and block_y != gx[center - m : center + m + 1]:
            raise PreconditionError("central block shadowing failed; construction is broken")


def _cycle_through_all_states(p: SftPresentation):
    """Closed edge path visiting every state, built from shortest hops."""
    n = p.num_states
    edges = []
    visited = {0}
    cur = 0
    while len(visited) < n:
        target = min(s for s in range(n) if s not in visited)
        hop = shortest_path(p, cur, target)
        assert hop is not None, "needs an irreducible presentation"
        edges.extend(hop)
        visited.update(e[1] for e in hop)
        cur = target
    back = shortest_path(p, cur, 0)
    assert back is not None
    edges.extend(back)
    if not edges:
        # single state: use its self-loop
        edges = [p.out_edges[0][0]]
        assert edges[0][1] == 0
    return tuple(edges)


def constant_to_one_check(a: PermutationAction, cap: int = DEFAULT_CAP) -> bool:
    """Operational consequences of the constant-to-one verdict.

    Both reduced matrices must share their reciprocal characteristic
    polynomial and Bowen-Franks invariants, and the quotient period counts
    must equal the trace powers of both reduced matrices for n <= 8.
    Refuses to run on a nonexpansive action.
    """
    verdict = classify_quotient(a)
    if verdict.verdict != "constant-to-one":
        raise PreconditionError("check applies only to constant-to-one quotients")
    right = right_reduce(a).matrix
    left = left_reduce(a).matrix
    if char_poly_reciprocal(right) != char_poly_reciprocal(left):
        return False
    if bowen_franks(right) != bowen_franks(left):
        return False
    counts = quotient_period_counts(a, 8, cap)
    for n in range(1, 9):
        expected = counts[n - 1]
        if trace_of_power(right, n) != expected or trace_of_power(left, n) != expected:
            return False
    return True
