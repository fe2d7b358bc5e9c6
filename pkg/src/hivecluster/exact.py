"""Exact arithmetic primitives: integer Laurent polynomials and exact linear algebra.

Everything here is over Z or Q (``fractions.Fraction``); no floating point.
Laurent polynomials are immutable dictionaries mapping integer exponent
tuples to nonzero integer coefficients.  Matrices are plain lists of lists.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class ExactDivisionError(ArithmeticError):
    """Raised when an exact Laurent polynomial division leaves a remainder."""


class LaurentPoly:
    """An integer Laurent polynomial in a fixed number of variables.

    Terms are stored as ``{exponent_tuple: coefficient}`` with zero
    coefficients dropped.  Instances are immutable and hashable; the
    canonical key is the sorted term list.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, int]):
        clean = {}
        for exp, c in terms.items():
            if c:
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise ValueError("exponent tuple of wrong length")
                clean[exp] = c
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, c: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, nvars: int, exp: Sequence[int], coef: int = 1) -> "LaurentPoly":
        return cls(nvars, {tuple(exp): coef})

    @classmethod
    def variable(cls, nvars: int, idx: int) -> "LaurentPoly":
        exp = [0] * nvars
        exp[idx] = 1
        return cls(nvars, {tuple(exp): 1})

    # -- basic structure ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self.key()))
        return self._hash

    def key(self) -> tuple:
        """Canonical hashable form: sorted (exponent, coefficient) pairs."""
        return tuple(sorted(self.terms.items()))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def monomial_parts(self) -> tuple[tuple, int]:
        if not self.is_monomial():
            raise ValueError("not a monomial")
        return next(iter(self.terms.items()))

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def min_exponent(self, idx: int):
        """Smallest exponent of variable ``idx`` over all terms (None if zero)."""
        if not self.terms:
            return None
        return min(e[idx] for e in self.terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, 0) + c
        return LaurentPoly(self.nvars, terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        terms: dict[tuple, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                terms[exp] = terms.get(exp, 0) + c1 * c2
        return LaurentPoly(self.nvars, terms)

    def scale(self, c: int) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def shift(self, exp: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial x^exp."""
        exp = tuple(exp)
        return LaurentPoly(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()},
        )

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if self.is_monomial():
                exp, coef = self.monomial_parts()
                if coef in (1, -1):
                    c = coef if n % 2 else 1
                    return LaurentPoly.monomial(self.nvars, [n * e for e in exp], c)
            raise ValueError("negative power of a non-unit")
        result = LaurentPoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division self / other; raises ExactDivisionError on remainder."""
        if not other:
            raise ZeroDivisionError("Laurent polynomial division by zero")
        if not self:
            return LaurentPoly.zero(self.nvars)
        # Shift both operands into the ordinary polynomial ring, divide
        # there, and shift the quotient back.
        sa = [min(e[i] for e in self.terms) for i in range(self.nvars)]
        sb = [min(e[i] for e in other.terms) for i in range(self.nvars)]
        a = self.shift([-s for s in sa])
        b = other.shift([-s for s in sb])
        q = _poly_exact_div(a, b)
        return q.shift([x - y for x, y in zip(sa, sb)])

    def divides(self, other: "LaurentPoly") -> bool:
        try:
            other.exact_div(self)
            return True
        except ExactDivisionError:
            return False

    def substitute(self, values: Sequence):
        """Evaluate at the given values (Fractions or LaurentPoly units allowed).

        Numeric values must be nonzero when a negative exponent occurs.
        """
        total = None
        for exp, coef in self.terms.items():
            term = Fraction(coef) if not isinstance(values[0], LaurentPoly) else LaurentPoly.const(values[0].nvars, coef)
            for v, e in zip(values, exp):
                if e:
                    term = term * v**e
            total = term if total is None else total + term
        if total is None:
            return LaurentPoly.zero(values[0].nvars) if values and isinstance(values[0], LaurentPoly) else Fraction(0)
        return total

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {dict(sorted(self.terms.items()))})"


def _poly_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact division with all exponents nonnegative, lex leading-term loop."""
    nvars = a.nvars
    lead_b = max(b.terms)
    cb = b.terms[lead_b]
    rem = dict(a.terms)
    quot: dict[tuple, int] = {}
    while rem:
        lead_r = max(rem)
        cr = rem[lead_r]
        qexp = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(e < 0 for e in qexp) or cr % cb:
            raise ExactDivisionError("inexact Laurent division")
        qc = cr // cb
        quot[qexp] = qc
        for e, c in b.terms.items():
            t = tuple(x + y for x, y in zip(qexp, e))
            v = rem.get(t, 0) - qc * c
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return LaurentPoly(nvars, quot)


# -- exact linear algebra ---------------------------------------------------


def det_bareiss(mat: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = len(mat)
    if n == 0:
        return 1
    m = [[int(x) for x in row] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k]), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def det_gauss(mat: Sequence[Sequence]) -> Fraction:
    """Determinant via pivoted Gaussian elimination over Q."""
    n = len(mat)
    m = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        det *= m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] * inv
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return det


def row_echelon(mat: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rref, pivot column list)."""
    if not mat:
        return [], []
    m = [[Fraction(x) for x in row] for row in mat]
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(mat: Sequence[Sequence]) -> int:
    return len(row_echelon(mat)[1])


def solve_rational(mat: Sequence[Sequence], rhs: Sequence):
    """One rational solution of A x = b, or None if inconsistent."""
    if not mat:
        return [] if not any(rhs) else None
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    rref, pivots = row_echelon(aug)
    cols = len(mat[0])
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = rref[r][-1]
    return x

def kernel_basis(mat: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the rational null space of A (as column vectors)."""
    if not mat:
        return []
    rref, pivots = row_echelon(mat)
    cols = len(mat[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][fc]
        basis.append(v)
    return basis


def invert_matrix(mat: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    rref, pivots = row_echelon(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in rref]


def mat_mul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def diagonalize_integer(mat: Sequence[Sequence[int]]):
    """Diagonalize over Z: D = U A V with unimodular U, V; returns (D, U, V).

    D is diagonal but not normalized to the Smith divisibility chain, which
    is not needed for solving linear systems.
    """
    a = [[int(x) for x in row] for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(rows, cols):
        # find a nonzero pivot in the remaining block
        pos = next(
            ((i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]),
            None,
        )
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            # clear column t then row t; repeat until both are clean
            i = next((i for i in range(t + 1, rows) if a[i][t]), None)
            if i is not None:
                if a[i][t] % a[t][t] == 0:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                else:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    swap_rows(t, i)
                continue
            j = next((j for j in range(t + 1, cols) if a[t][j]), None)
            if j is not None:
                if a[t][j] % a[t][t] == 0:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                else:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    swap_cols(t, j)
                continue
            break
        t += 1
    for i in range(t):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]
    return a, u, v


def integer_solve(mat: Sequence[Sequence[int]], rhs: Sequence[int]):
    """All integer solutions of A x = b.

    Returns (x0, kernel) where x0 is one integer solution and kernel is a
    list of integer vectors spanning the integer null space, or None when
    no integer solution exists.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if rows == 0:
        return [0] * cols, [[int(i == j) for j in range(cols)] for i in range(cols)]
    d, u, v = diagonalize_integer(mat)
    c = mat_vec(u, list(rhs))
    y = [0] * cols
    r = 0
    for i in range(min(rows, cols)):
        if d[i][i]:
            r = i + 1
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        if i < r and di:
            if c[i] % di:
                return None
            y[i] = c[i] // di
        elif c[i]:
            return None
    x0 = mat_vec(v, y)
    kernel = [[v[row][j] for row in range(cols)] for j in range(r, cols)]
    return x0, kernel
