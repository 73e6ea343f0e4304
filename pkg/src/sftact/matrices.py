"""Exact integer matrix and polynomial algebra.

Everything here runs on Python's unbounded integers, with exact rationals
used internally for polynomial gcd computations.  No floating point is
used anywhere in the package.

The central objects are square nonnegative integer matrices (``IntMatrix``,
the presentation datum of a shift of finite type), general rectangular
matrices (``RectMatrix``, used for products, selectors and equivalence
certificates), integer polynomials with the constant term first
(``IntPolynomial``, used for reciprocal characteristic polynomials and
linear recurrences), and the invariant factors of an integer matrix
cokernel (``AbelianGroupInvariants``, used for Bowen-Franks groups).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import InputError


def _check_int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{what} must be an exact integer, got {x!r}")
    return x


def _freeze_rows(entries, what: str):
    rows = tuple(tuple(_check_int(x, what) for x in row) for row in entries)
    if not rows or not rows[0]:
        raise InputError(f"{what} needs at least one row and one column")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputError(f"{what} has ragged rows")
    return rows


@dataclass(frozen=True)
class IntMatrix:
    """Square matrix of nonnegative integers.

    Optional ``labels`` name the states; they must be pairwise distinct.
    """

    entries: tuple
    labels: tuple | None = None

    def __post_init__(self):
        rows = _freeze_rows(self.entries, "matrix entry")
        if len(rows) != len(rows[0]):
            raise InputError(f"matrix must be square, got {len(rows)}x{len(rows[0])}")
        if any(x < 0 for row in rows for x in row):
            raise InputError("matrix entries must be nonnegative")
        object.__setattr__(self, "entries", rows)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != len(rows):
                raise InputError("label count does not match matrix dimension")
            if len(set(labels)) != len(labels):
                raise InputError("state labels must be pairwise distinct")
            object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return str(i + 1)

    def transpose(self) -> "IntMatrix":
        n = self.dim
        return IntMatrix(
            tuple(tuple(self.entries[j][i] for j in range(n)) for i in range(n)),
            labels=self.labels,
        )

    def is_zero_one(self) -> bool:
        return all(x <= 1 for row in self.entries for x in row)

    def to_rect(self, signed: bool = False) -> "RectMatrix":
        return RectMatrix(self.entries, signed=signed)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))


@dataclass(frozen=True)
class RectMatrix:
    """Rectangular integer matrix.

    Entries are nonnegative unless ``signed`` is set; the signed form only
    appears in the Smith normal form context (matrices like I - A).
    """

    entries: tuple
    signed: bool = False

    def __post_init__(self):
        rows = _freeze_rows(self.entries, "matrix entry")
        if not self.signed and any(x < 0 for row in rows for x in row):
            raise InputError("unsigned matrix entries must be nonnegative")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def transpose(self) -> "RectMatrix":
        return RectMatrix(
            tuple(tuple(self.entries[j][i] for j in range(self.rows)) for i in range(self.cols)),
            signed=self.signed,
        )

    def to_square(self, labels=None) -> IntMatrix:
        if self.rows != self.cols:
            raise InputError(f"cannot view {self.rows}x{self.cols} matrix as square")
        return IntMatrix(self.entries, labels=labels)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, constant term first.

    Trailing zero coefficients are trimmed; the zero polynomial is the
    empty coefficient tuple.
    """

    coefficients: tuple

    def __post_init__(self):
        coeffs = [
            _check_int(c, "polynomial coefficient") for c in self.coefficients
        ]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class AbelianGroupInvariants:
    """Invariant factors (torsion) and free rank of a finitely generated
    abelian group, in particular of an integer matrix cokernel.

    The torsion list d_1 | d_2 | ... consists of integers >= 2.
    """

    torsion: tuple
    free_rank: int

    def __post_init__(self):
        tors = tuple(_check_int(d, "torsion coefficient") for d in self.torsion)
        if any(d < 2 for d in tors):
            raise InputError("torsion coefficients must be at least 2")
        for a, b in zip(tors, tors[1:]):
            if b % a:
                raise InputError(f"torsion coefficients must form a divisibility chain, {a} does not divide {b}")
        _check_int(self.free_rank, "free rank")
        if self.free_rank < 0:
            raise InputError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", tors)


# ---------------------------------------------------------------------------
# raw helpers on nested tuples of ints

def _mul_rows(a, b):
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def _add_rows(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _scale_rows(a, c):
    return tuple(tuple(c * x for x in row) for row in a)


def _identity_rows(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _trace(a) -> int:
    return sum(a[i][i] for i in range(len(a)))


def _pow_rows(a, n):
    result = _identity_rows(len(a))
    base = a
    while n:
        if n & 1:
            result = _mul_rows(result, base)
        base = _mul_rows(base, base) if n > 1 else base
        n >>= 1
    return result


# ---------------------------------------------------------------------------
# operations

def mat_mul(a: RectMatrix, b: RectMatrix) -> RectMatrix:
    """Exact product of two rectangular integer matrices."""
    if a.cols != b.rows:
        raise InputError(f"dimension mismatch: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    return RectMatrix(_mul_rows(a.entries, b.entries), signed=a.signed or b.signed)


def trace_of_power(a: IntMatrix, n: int) -> int:
    """trace(a^n), the number of period-n points of the shift presented by a."""
    _check_int(n, "power")
    if n < 1:
        raise InputError("power must be at least 1")
    return _trace(_pow_rows(a.entries, n))


def char_poly_reciprocal(a: IntMatrix) -> IntPolynomial:
    """det(I - t a) as an exact integer polynomial in t.

    The reciprocal zeta function of the shift presented by ``a``: the
    coefficients c of det(I - t a) give the linear recurrence
    sum_k c_k trace(a^(n-k)) = 0 satisfied by the trace sequence.
    Computed with the Faddeev-LeVerrier recursion, whose divisions are
    exact over the integers.
    """
    n = a.dim
    rows = a.entries
    # char poly of a: lam^n + c[n-1] lam^(n-1) + ... + c[0], with c[n] = 1
    c = [0] * (n + 1)
    c[n] = 1
    m = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    for k in range(1, n + 1):
        m = _add_rows(_mul_rows(rows, m), _scale_rows(_identity_rows(n), c[n - k + 1]))
        t = _trace(_mul_rows(rows, m))
        assert t % k == 0, "Faddeev-LeVerrier division must be exact"
        c[n - k] = -(t // k)
    # det(I - t a) has t^j coefficient c[n - j]
    return IntPolynomial(tuple(c[n - j] for j in range(n + 1)))


def _primitive(coeffs):
    """Content-1 integer form with the lowest nonzero coefficient positive."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return ()
    content = 0
    for x in coeffs:
        content = gcd(content, x)
    coeffs = [x // content for x in coeffs]
    lowest = next(x for x in coeffs if x != 0)
    if lowest < 0:
        coeffs = [-x for x in coeffs]
    return tuple(coeffs)


def _frac_divmod(num, den):
    """Polynomial division over the rationals; lists of Fractions, constant first."""
    num = list(num)
    dden = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(num) - dden, 0)
    for i in range(len(num) - 1, dden - 1, -1):
        q = num[i] / lead
        quot[i - dden] = q
        for j in range(dden + 1):
            num[i - dden + j] -= q * den[j]
    while num and num[-1] == 0:
        num.pop()
    return quot, num


def _poly_gcd_coeffs(p, q):
    """Primitive integer gcd of two nonzero integer coefficient tuples."""
    a = [Fraction(x) for x in p]
    b = [Fraction(x) for x in q]
    while b:
        _, r = _frac_divmod(a, b)
        a, b = b, r
    # a is a nonzero rational polynomial; clear denominators and normalize
    denoms = lcm(*[f.denominator for f in a]) if len(a) > 1 else a[0].denominator
    ints = [int(f * denoms) for f in a]
    return _primitive(ints)


def _poly_mul_coeffs(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return tuple(out)


def poly_lcm(ps) -> IntPolynomial:
    """Least common multiple of nonzero integer polynomials over the rationals.

    The result is primitive with its lowest nonzero coefficient positive,
    so polynomials arising as det(I - t A) keep constant term +1.
    """
    ps = list(ps)
    if not ps:
        raise InputError("poly_lcm needs at least one polynomial")
    coeffs = []
    for p in ps:
        if p.is_zero():
            raise InputError("poly_lcm is undefined for the zero polynomial")
        coeffs.append(_primitive(p.coefficients))
    acc = coeffs[0]
    for p in coeffs[1:]:
        g = _poly_gcd_coeffs(acc, p)
        prod = _poly_mul_coeffs(acc, p)
        quot, rem = _frac_divmod([Fraction(x) for x in prod], [Fraction(x) for x in g])
        assert not rem, "gcd must divide the product exactly"
        acc = _primitive([int(f) for f in quot])
    return IntPolynomial(acc)


def poly_divides(p: IntPolynomial, q: IntPolynomial) -> bool:
    """True when p divides q over the rationals (p nonzero)."""
    if p.is_zero():
        raise InputError("division by the zero polynomial")
    if q.is_zero():
        return True
    if q.degree < p.degree:
        return False
    _, rem = _frac_divmod(
        [Fraction(x) for x in q.coefficients], [Fraction(x) for x in p.coefficients]
    )
    return not rem


def smith_normal_form(m: RectMatrix) -> AbelianGroupInvariants:
    """Invariant factors and free rank of the cokernel of a square matrix.

    Standard integer row/column reduction with exact arithmetic, pivoting
    on the entry of minimal absolute value to bound coefficient growth.
    """
    if m.rows != m.cols:
        raise InputError(f"Smith form corner reduction needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    a = [list(row) for row in m.entries]

    def find_pivot(t):
        best = None
        for i in range(t, n):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    diag = []
    for t in range(n):
        piv = find_pivot(t)
        if piv is None:
            break
        while True:
            i0, j0 = piv
            if i0 != t:
                a[t], a[i0] = a[i0], a[t]
            if j0 != t:
                for row in a:
                    row[t], row[j0] = row[j0], row[t]
            done = True
            for i in range(t + 1, n):
                q = a[i][t] // a[t][t]
                if q:
                    for j in range(t, n):
                        a[i][j] -= q * a[t][j]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // a[t][t]
                if q:
                    for i in range(t, n):
                        a[i][j] -= q * a[i][t]
                if a[t][j]:
                    done = False
            if done:
                bad = None
                for i in range(t + 1, n):
                    for j in range(t + 1, n):
                        if a[i][j] % a[t][t]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                # fold the offending row in so the pivot can shrink
                for j in range(t, n):
                    a[t][j] += a[bad][j]
            piv = find_pivot(t)
        diag.append(abs(a[t][t]))

    # enforce the divisibility chain d_1 | d_2 | ...
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            if diag[i + 1] % diag[i]:
                g = gcd(diag[i], diag[i + 1])
                diag[i], diag[i + 1] = g, diag[i] * diag[i + 1] // g
                changed = True
    return AbelianGroupInvariants(
        torsion=tuple(d for d in diag if d >= 2),
        free_rank=n - len(diag),
    )


def bowen_franks(a: IntMatrix) -> AbelianGroupInvariants:
    """Bowen-Franks group of a shift of finite type: cokernel of I - A."""
    n = a.dim
    diff = tuple(
        tuple((1 if i == j else 0) - a.entries[i][j] for j in range(n)) for i in range(n)
    )
    return smith_normal_form(RectMatrix(diff, signed=True))
