"""Brute-force references that share no code with packetc.

Isotropy over Q_p is decided by lifting solutions of q(x) = 0 modulo p^k
one digit at a time; a solution is accepted once Hensel's lemma certifies
a true p-adic zero nearby.  The Witt index is then computed by splitting
off explicit hyperbolic planes over Q and recursing on the orthogonal
complement.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np

MAX_LEVEL = 6


class Inconclusive(RuntimeError):
    pass


def vp(x, p: int) -> int:
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0")
    n, d, v = x.numerator, x.denominator, 0
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def unit_part(x, p: int) -> Fraction:
    x = Fraction(x)
    return x / Fraction(p) ** vp(x, p)


def is_padic_square(x, p: int) -> bool:
    x = Fraction(x)
    if x == 0:
        return True
    if vp(x, p) % 2:
        return False
    u = unit_part(x, p)
    if p == 2:
        return u.numerator * u.denominator % 8 == 1
    r = u.numerator * u.denominator % p
    return pow(r, (p - 1) // 2, p) == 1


def class_reps(p: int | None) -> list[int]:
    """One integer from each square class of Q_p^x (p=None: R)."""
    if p is None:
        return [1, -1]
    if p == 2:
        return [s * u for s in (1, 2) for u in (1, 3, 5, 7)]
    n = next(x for x in range(2, p) if pow(x, (p - 1) // 2, p) == p - 1)
    return [1, n, p, n * p]


def reduce_class(x, p: int) -> int:
    """The member of class_reps(p) in the square class of x."""
    for r in class_reps(p):
        if is_padic_square(Fraction(x) / r, p):
            return r
    raise AssertionError("square classes do not cover x")


def _q(coeffs, x) -> int:
    return sum(a * xi * xi for a, xi in zip(coeffs, x))


def _certified(coeffs, x, p) -> int | None:
    """Index i whose partial derivative certifies a zero near x."""
    qx = _q(coeffs, x)
    for i, (a, xi) in enumerate(zip(coeffs, x)):
        if xi % p == 0 and all(xj % p == 0 for j, xj in enumerate(x) if j != i):
            continue
        d = 2 * a * xi
        if d == 0:
            continue
        if qx == 0 or vp(qx, p) > 2 * vp(d, p):
            return i
    return None


def find_zero(coeffs, p: int, max_level: int = MAX_LEVEL):
    """A primitive integer vector certified to lie near a p-adic zero of
    sum a_i x_i^2, or None when no primitive solution survives mod p^max_level."""
    coeffs = [int(a) for a in coeffs]
    n = len(coeffs)
    layer = []
    for x in product(range(p), repeat=n):
        if any(x) and _q(coeffs, x) % p == 0:
            if _certified(coeffs, x, p) is not None:
                return x
            layer.append(x)
    level = 1
    while layer:
        for x in layer:
            if _certified(coeffs, x, p) is not None:
                return x
        if level == max_level:
            raise Inconclusive(f"solutions survive mod {p}^{level} for {coeffs}")
        mod = p ** (level + 1)
        nxt = []
        for x in layer:
            for digits in product(range(p), repeat=n):
                y = tuple(xi + di * p**level for xi, di in zip(x, digits))
                if _q(coeffs, y) % mod == 0:
                    nxt.append(y)
        layer = nxt
        level += 1
    return None


def is_isotropic(coeffs, p: int | None) -> bool:
    if p is None:
        return any(a > 0 for a in coeffs) and any(a < 0 for a in coeffs)
    return find_zero(coeffs, p) is not None


def hilbert(a: int, b: int, p: int | None) -> int:
    """(a, b)_p = +1 iff z^2 = a x^2 + b y^2 has a nonzero solution."""
    return 1 if is_isotropic([a, b, -1], p) else -1


def _refine(coeffs, x, p, prec):
    """Newton steps on one coordinate until q(x) is divisible by p^prec."""
    x = list(x)
    i = _certified(coeffs, x, p)
    mod = p ** (prec + 20)
    for _ in range(200):
        qx = _q(coeffs, x)
        if qx == 0 or vp(qx, p) >= prec:
            return x
        d = 2 * coeffs[i] * x[i]
        t = vp(d, p)
        num, den = qx // p**t, d // p**t
        x[i] = (x[i] - num * pow(den, -1, mod)) % mod
    raise AssertionError("Newton iteration did not converge")


def _diagonalize(gram: list[list[Fraction]]) -> list[Fraction]:
    """Diagonal entries of an exact congruence diagonalization over Q."""
    g = [row[:] for row in gram]
    n = len(g)
    out = []
    for k in range(n):
        if g[k][k] == 0:
            j = next((j for j in range(k + 1, n) if g[k][j] != 0), None)
            if j is None:
                raise AssertionError("degenerate complement")
            # e_k <- e_k + e_j makes the pivot 2 b(e_k, e_j) + q(e_j)
            for r in range(n):
                g[k][r] += g[j][r]
            for r in range(n):
                g[r][k] += g[r][j]
            if g[k][k] == 0:
                for r in range(n):
                    g[k][r] -= 2 * g[j][r]
                for r in range(n):
                    g[r][k] -= 2 * g[r][j]
        piv = g[k][k]
        out.append(piv)
        for r in range(k + 1, n):
            f = g[r][k] / piv
            for c in range(k, n):
                g[r][c] -= f * g[k][c]
        for c in range(k + 1, n):
            g[k][c] = Fraction(0)
        for r in range(k + 1, n):
            g[r][k] = Fraction(0)
    return out


def _null_basis(rows: list[list[Fraction]], n: int) -> list[list[Fraction]]:
    """Basis of {x : rows . x = 0} by exact row reduction."""
    m = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [v / m[r][c] for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -m[i][free]
        basis.append(v)
    return basis


def split_hyperbolic(coeffs, p: int) -> list[int] | None:
    """If sum a_i x_i^2 is isotropic, a diagonal form q' with q = H + q'."""
    x = find_zero(coeffs, p)
    if x is None:
        return None
    n = len(coeffs)
    v = _refine(coeffs, x, p, 40)
    j = min((j for j in range(n) if coeffs[j] * v[j] != 0), key=lambda j: vp(coeffs[j] * v[j], p))
    a = [Fraction(c) for c in coeffs]
    qv = Fraction(_q(coeffs, v))
    bvj = a[j] * v[j]
    if not is_padic_square(bvj * bvj - qv * a[j], p):
        raise AssertionError("plane spanned by the approximate zero is not hyperbolic")
    if n == 2:
        return []
    rows = [[a[i] * v[i] for i in range(n)], [a[i] if i == j else Fraction(0) for i in range(n)]]
    comp = _null_basis(rows, n)
    gram = [[sum(a[k] * u[k] * w[k] for k in range(n)) for w in comp] for u in comp]
    return [reduce_class(e, p) for e in _diagonalize(gram)]


def witt_index(coeffs, p: int | None) -> int:
    coeffs = [int(c) for c in coeffs]
    if p is None:
        return min(sum(1 for c in coeffs if c > 0), sum(1 for c in coeffs if c < 0))
    w = 0
    while len(coeffs) >= 2:
        rest = split_hyperbolic(coeffs, p)
        if rest is None:
            break
        coeffs = rest
        w += 1
    return w


# symmetry type of rho x R[a] x R[b] from explicit invariant forms


def sl2_form(n: int) -> np.ndarray:
    """Invariant bilinear form on Sym^(n-1) C^2 in the monomial basis:
    <x^i y^(n-1-i), x^j y^(n-1-j)> = (-1)^i / C(n-1, i) when i + j = n-1."""
    from math import comb

    m = np.zeros((n, n))
    for i in range(n):
        m[i, n - 1 - i] = (-1) ** i / comb(n - 1, i)
    return m


def rho_form(d: int, symplectic: bool) -> np.ndarray:
    if not symplectic:
        return np.eye(d)
    m = np.zeros((d, d))
    for i in range(d // 2):
        m[i, d // 2 + i] = 1
        m[d // 2 + i, i] = -1
    return m


def tensor_is_symplectic(d: int, rho_symplectic: bool, a: int, b: int) -> bool:
    form = np.kron(np.kron(rho_form(d, rho_symplectic), sl2_form(a)), sl2_form(b))
    if np.allclose(form, form.T):
        return False
    if np.allclose(form, -form.T):
        return True
    raise AssertionError("invariant form is neither symmetric nor alternating")
