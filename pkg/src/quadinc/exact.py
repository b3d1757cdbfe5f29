"""Exact rational scalars and small dense linear algebra over ``Fraction``.

Everything here works on lists of lists of :class:`fractions.Fraction`; the
matrices involved are at most 4x4, so plain Gaussian elimination is the right
tool.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
Matrix = list[list[Fraction]]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: a float silently carries a binary rounding error.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}; expected 'p' or 'p/q'") from exc


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def sign(q) -> int:
    return (q > 0) - (q < 0)


def is_square(q: Fraction) -> bool:
    """True iff ``q`` is the square of a rational."""
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def rational_sqrt(q: Fraction) -> Fraction:
    if not is_square(q):
        raise ValueError(f"{q} is not a rational square")
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


def primitive_integer_vector(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a nonzero rational vector to coprime integers, first nonzero entry positive."""
    lcm = 1
    for x in v:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def integer_row(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Clear denominators (positive scale factor); no gcd or sign normalization."""
    lcm = 1
    for x in v:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return tuple(int(x * lcm) for x in v)


def dot(u: Iterable, v: Iterable):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def cross(u: Sequence, v: Sequence) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def matvec(M: Sequence[Sequence], v: Sequence) -> list:
    return [dot(row, v) for row in M]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*B))
    return [[dot(row, col) for col in cols] for row in A]


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*A)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def quadratic_form(Q: Sequence[Sequence], u: Sequence, v: Sequence | None = None):
    """Bilinear value ``u^T Q v`` (``v`` defaults to ``u``)."""
    if v is None:
        v = u
    return dot(u, matvec(Q, v))


def row_echelon(A: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = [[Fraction(x) for x in row] for row in A]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if R[i][c] != 0), None)
        if pivot is None:
            continue
        R[r], R[pivot] = R[pivot], R[r]
        p = R[r][c]
        R[r] = [x / p for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(A: Sequence[Sequence]) -> int:
    return len(row_echelon(A)[1])


def nullspace(A: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right kernel of ``A``."""
    R, pivots = row_echelon(A)
    cols = len(A[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Unique solution of the square system ``A x = b``, or None when singular."""
    n = len(A)
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    R, pivots = row_echelon(aug)
    if pivots != list(range(n)):
        return None
    return [R[i][n] for i in range(n)]


def det(A: Sequence[Sequence]):
    """Determinant by fraction-exact elimination (works for ints too)."""
    M = [[Fraction(x) for x in row] for row in A]
    n = len(M)
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if M[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            M[c], M[pivot] = M[pivot], M[c]
            result = -result
        p = M[c][c]
        result *= p
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / p
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return result


def inertia(S: Sequence[Sequence]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational matrix.

    Symmetric elimination by congruence; Sylvester's law of inertia makes the
    pivot signs the signature. When every remaining diagonal entry is zero but
    an off-diagonal one is not, adding row/column j to row/column i creates a
    nonzero pivot ``2 S[i][j]``.
    """
    M = [[Fraction(x) for x in row] for row in S]
    n = len(M)
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if M[i][i] != 0), None)
        if k is None:
            pair = next(
                ((i, j) for i in active for j in active if i != j and M[i][j] != 0),
                None,
            )
            if pair is None:
                break
            i, j = pair
            for t in range(n):
                M[i][t] += M[j][t]
            for t in range(n):
                M[t][i] += M[t][j]
            k = i
        p = M[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        for i in active:
            if M[i][k] != 0:
                f = M[i][k] / p
                for t in range(n):
                    M[i][t] -= f * M[k][t]
        for i in active:
            M[k][i] = Fraction(0)
            M[i][k] = Fraction(0)
    return pos, neg, n - pos - neg
