"""Exact determinants: fraction-free Bareiss, division-free Berkowitz, and a
Kronecker-substitution driver for matrices of integer polynomials."""

from __future__ import annotations

from typing import Callable, Sequence, TypeVar

from .polynomial import LaurentPolynomial

R = TypeVar("R")


def bareiss_det(
    matrix: Sequence[Sequence[R]],
    *,
    zero: R = 0,
    one: R = 1,
    exact_div: Callable[[R, R], R] | None = None,
) -> R:
    """Fraction-free Gaussian elimination over an integral domain.

    ``exact_div(a, b)`` must return ``a / b`` when the quotient is known to be
    exact; the default uses ``//`` which is right for ``int``.
    """
    n = len(matrix)
    if n == 0:
        return one
    div = exact_div or (lambda a, b: a // b)
    m = [list(row) for row in matrix]
    sign = 1
    prev = one
    for k in range(n - 1):
        if m[k][k] == zero:
            for i in range(k + 1, n):
                if m[i][k] != zero:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            mik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = div(pivot * rowi[j] - mik * rowk[j], prev)
            rowi[k] = zero
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def berkowitz_charpoly(matrix: Sequence[Sequence[R]], *, zero: R = 0, one: R = 1) -> list[R]:
    """Coefficients ``[1, c1, ..., cn]`` of ``det(xI - A)`` without any division."""
    n = len(matrix)
    if n == 0:
        return [one]
    a = matrix
    coeffs: list[R] = [one, -a[0][0]]
    for r in range(1, n):
        row = [a[r][j] for j in range(r)]
        col = [a[i][r] for i in range(r)]
        toeplitz: list[R] = [one, -a[r][r]]
        v = col
        for _ in range(r):
            acc = zero
            for x, y in zip(row, v):
                acc = acc + x * y
            toeplitz.append(-acc)
            nv = []
            for i in range(r):
                s = zero
                ai = a[i]
                for j in range(r):
                    s = s + ai[j] * v[j]
                nv.append(s)
            v = nv
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(min(i, r) + 1):
                s = s + toeplitz[i - j] * coeffs[j]
            new.append(s)
        coeffs = new
    return coeffs


def berkowitz_det(matrix: Sequence[Sequence[R]], *, zero: R = 0, one: R = 1) -> R:
    n = len(matrix)
    c = berkowitz_charpoly(matrix, zero=zero, one=one)[n]
    return c if n % 2 == 0 else -c


def polynomial_det(matrix: Sequence[Sequence[dict[int, int]]]) -> LaurentPolynomial:
    """Determinant of a matrix whose entries are integer polynomials in ``t``.

    Entries are ``{exponent: coeff}`` dicts with non-negative exponents.  The
    matrix is evaluated at ``t = 2**B`` with ``B`` above the coefficient bound
    (product of row 1-norms), the integer determinant is taken with Bareiss,
    and the coefficients are read back as balanced base-``2**B`` digits.
    """
    n = len(matrix)
    if n == 0:
        return LaurentPolynomial.constant(1)
    bound = 1
    for row in matrix:
        bound *= max(1, sum(abs(c) for entry in row for c in entry.values()))
    bits = bound.bit_length() + 2
    x = 1 << bits
    ev = [[sum(c * x**e for e, c in entry.items()) for entry in row] for row in matrix]
    value = bareiss_det(ev)
    coeffs: dict[int, int] = {}
    half = x >> 1
    e = 0
    while value:
        digit = value & (x - 1)
        if digit >= half:
            digit -= x
        if digit:
            coeffs[e] = digit
        value = (value - digit) >> bits
        e += 1
    return LaurentPolynomial(coeffs)


# -- modular characteristic polynomials -------------------------------------------------------

# primes below 2**25 keep every dot product of length < 2**13 inside int64
MODULAR_PRIMES = (33554393, 33554383, 33554371, 33554347, 33554341, 33554317, 33554291, 33554273)


def charpoly_mod(a, q: int):
    """Coefficients ``[1, c1, ..., cn]`` of ``det(xI - A)`` modulo the prime ``q``.

    Similarity-reduces ``A`` to upper Hessenberg form, then runs the usual
    three-term-style recurrence on the leading principal blocks.
    """
    import numpy as np

    h = np.array(a, dtype=np.int64) % q
    n = h.shape[0]
    if n and n >= 1 << 13:
        raise OverflowError("matrix too large for int64 modular reduction")
    for k in range(n - 2):
        col = h[k + 1 :, k]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        piv = k + 1 + int(nz[0])
        if piv != k + 1:
            h[[piv, k + 1], :] = h[[k + 1, piv], :]
            h[:, [piv, k + 1]] = h[:, [k + 1, piv]]
        inv = pow(int(h[k + 1, k]), q - 2, q)
        f = (h[k + 2 :, k] * inv) % q
        if not f.any():
            continue
        h[k + 2 :, :] = (h[k + 2 :, :] - np.outer(f, h[k + 1, :]) % q) % q
        h[:, k + 1] = (h[:, k + 1] + (h[:, k + 2 :] @ f) % q) % q
    # p[m] = charpoly of the leading m x m block, as a length n+1 coefficient
    # vector of x^0..x^n
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for m in range(1, n + 1):
        diag = int(h[m - 1, m - 1])
        nxt = np.zeros(n + 1, dtype=np.int64)
        nxt[1:] = polys[m - 1, :-1]
        nxt = (nxt - diag * polys[m - 1]) % q
        # subtract sum_{i<m} h[i-1, m-1] * prod_{j=i}^{m-1} h[j, j-1] * p[i-1]
        coef = np.zeros(m - 1, dtype=np.int64)
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = prod * int(h[i, i - 1]) % q
            if prod == 0:
                break
            coef[i - 1] = int(h[i - 1, m - 1]) * prod % q
        if m > 1 and coef.any():
            nxt = (nxt - (coef @ polys[: m - 1]) % q) % q
        polys[m] = nxt
    return [int(c) for c in polys[n][::-1]]


def crt_signed(residues: list[int], moduli: list[int]) -> int:
    """Symmetric representative of the CRT solution."""
    x, mod = 0, 1
    for r, q in zip(residues, moduli):
        t = ((r - x) * pow(mod, -1, q)) % q
        x += mod * t
        mod *= q
    return x - mod if x > mod // 2 else x
