"""Exact rational vectors, matrices and polynomials.

Vectors are tuples of Fractions, matrices tuples of row tuples, and
polynomials tuples of ascending coefficients with no trailing zeros (the
zero polynomial is the empty tuple).  Everything is immutable; products
allocate fresh values.
"""

from __future__ import annotations

from fractions import Fraction

from .padic import format_rational, parse_rational

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]
Poly = tuple[Fraction, ...]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise ValueError(f"not a rational entry: {x!r}")


def vector(entries) -> Vector:
    v = tuple(_as_fraction(e) for e in entries)
    if not v:
        raise ValueError("vector must have length >= 1")
    return v


def matrix(rows) -> Matrix:
    m = tuple(tuple(_as_fraction(e) for e in row) for row in rows)
    if not m:
        raise ValueError("matrix must have dimension >= 1")
    n = len(m)
    for row in m:
        if len(row) != n:
            raise ValueError(f"matrix must be square, got row of length {len(row)} in {n} rows")
    return m


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def is_zero_vector(x: Vector) -> bool:
    return all(c == 0 for c in x)


def mat_vec_mul(a: Matrix, x: Vector) -> Vector:
    if len(a[0]) != len(x):
        raise ValueError(f"dimension mismatch: matrix is {len(a)}x{len(a[0])}, vector has length {len(x)}")
    return tuple(sum(row[j] * x[j] for j in range(len(x))) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch in matrix product")
    n = len(b)
    cols = tuple(zip(*b))
    return tuple(tuple(sum(row[k] * col[k] for k in range(n)) for col in cols) for row in a)


def mat_pow(a: Matrix, m: int) -> Matrix:
    """m-th power by repeated squaring; a**0 is the identity."""
    if m < 0:
        raise ValueError("exponent must be >= 0")
    result = identity(len(a))
    base = a
    while m:
        if m & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base) if m > 1 else base
        m >>= 1
    return result


def trace(a: Matrix) -> Fraction:
    return sum(a[i][i] for i in range(len(a)))


def char_poly(a: Matrix) -> Poly:
    """Monic characteristic polynomial det(tI - a), ascending coefficients.

    Faddeev-LeVerrier recursion: exact over Fractions, divides only by the
    integers 1..n.
    """
    n = len(a)
    coeffs_desc = [Fraction(1)]
    m = identity(n)
    for k in range(1, n + 1):
        am = mat_mul(a, m)
        ck = -trace(am) / k
        coeffs_desc.append(ck)
        m = tuple(
            tuple(am[i][j] + (ck if i == j else 0) for j in range(n))
            for i in range(n)
        )
    return tuple(reversed(coeffs_desc))


# ---------------------------------------------------------------------------
# polynomial helpers


def poly(coeffs) -> Poly:
    return poly_trim(tuple(_as_fraction(c) for c in coeffs))


def poly_trim(coeffs) -> Poly:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_degree(f: Poly) -> int:
    return len(f) - 1  # -1 for the zero polynomial


def poly_add(f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    return poly_trim(
        tuple((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n))
    )


def poly_scale(c: Fraction, f: Poly) -> Poly:
    return poly_trim(tuple(c * a for a in f))


def poly_sub(f: Poly, g: Poly) -> Poly:
    return poly_add(f, poly_scale(Fraction(-1), g))


def poly_mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return poly_trim(tuple(out))


def poly_divmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Exact long division over Fractions: f = q*g + r with deg r < deg g."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(f)
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    lead = g[-1]
    while len(rem) >= len(g) and any(c != 0 for c in rem):
        shift = len(rem) - len(g)
        factor = rem[-1] / lead
        q[shift] = factor
        for i, c in enumerate(g):
            rem[shift + i] -= factor * c
        while rem and rem[-1] == 0:
            rem.pop()
    return poly_trim(tuple(q)), poly_trim(tuple(rem))


def poly_monic(f: Poly) -> Poly:
    if not f:
        raise ValueError("zero polynomial has no monic form")
    return poly_scale(1 / f[-1], f)


def poly_derivative(f: Poly) -> Poly:
    return poly_trim(tuple(i * f[i] for i in range(1, len(f))))


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    a, b = f, g
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return ()
    return poly_monic(a)


def squarefree_part(f: Poly) -> Poly:
    """f / gcd(f, f'), monic: same roots as f, each with multiplicity one."""
    if poly_degree(f) < 1:
        raise ValueError("squarefree_part needs degree >= 1")
    g = poly_gcd(f, poly_derivative(f))
    q, r = poly_divmod(f, g)
    if r:
        raise ArithmeticError("gcd does not divide its polynomial")  # unreachable
    return poly_monic(q)


def poly_divides(g: Poly, f: Poly) -> bool:
    """True iff g divides f exactly."""
    return not poly_divmod(f, g)[1]


def t_power_minus_one(m: int) -> Poly:
    """The polynomial t**m - 1."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return (Fraction(-1),) + (Fraction(0),) * (m - 1) + (Fraction(1),)


def poly_to_strings(f: Poly) -> list[str]:
    """Ascending coefficient array of rational strings."""
    return [format_rational(c) for c in f]


def poly_from_strings(coeffs) -> Poly:
    return poly_trim(tuple(parse_rational(str(c)) for c in coeffs))


def poly_eval_matrix(f: Poly, a: Matrix) -> Matrix:
    """Evaluate f at a square matrix (Horner on matrices)."""
    n = len(a)
    result = tuple((Fraction(0),) * n for _ in range(n))
    for c in reversed(f):
        result = mat_mul(result, a)
        result = tuple(
            tuple(result[i][j] + (c if i == j else 0) for j in range(n)) for i in range(n)
        )
    return result
