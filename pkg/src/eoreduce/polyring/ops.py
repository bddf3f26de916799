"""Lex-order helpers, the normalising change of variables, shifts and resultants."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InputError
from .poly import Poly


def lex_compare(m1, m2) -> int:
    """Compare exponent tuples lexicographically with ``x1`` greatest.

    Returns 1, 0 or -1.
    """
    if len(m1) != len(m2):
        raise InputError(f"monomials of different length: {m1} vs {m2}")
    m1, m2 = tuple(m1), tuple(m2)
    return (m1 > m2) - (m1 < m2)


def is_lex_monic(f: Poly) -> bool:
    return bool(f.terms) and f.lc() == 1


@dataclass(frozen=True)
class VariableChange:
    """``x_i = y_i + y_k^(K^(k-i))`` for ``i < k`` and ``x_k = y_k``.

    Acts on the first ``k`` variables of a polynomial ring; later variables
    are left alone.  ``forward`` rewrites a polynomial in the ``x`` into the
    ``y``, ``backward`` undoes it.
    """

    K: int
    k: int

    def __post_init__(self):
        if self.K <= 0 or self.k <= 0:
            raise InputError("VariableChange needs K > 0 and k > 0")

    def _images(self, f: Poly, sign: int):
        last = self.k - 1
        images = {}
        for i in range(last):
            images[i] = Poly.var(f.ring, f.nvars, i) + Poly.var(f.ring, f.nvars, last, self.K ** (last - i)).scale(sign)
        return images

    def forward(self, f: Poly) -> Poly:
        return f.substitute(self._images(f, 1))

    def backward(self, f: Poly) -> Poly:
        return f.substitute(self._images(f, -1))

    def to_json(self):
        return {"K": self.K, "k": self.k}


def normalize_variables(f: Poly, k: int | None = None, smallest: bool = False):
    """Change variables so that a lex-monic ``f`` becomes monic in ``x_k``.

    Uses ``K = deg f + 1``, which always works; with ``smallest`` the least
    ``K >= 1`` that already makes the image monic is taken instead.
    Returns ``(change, image of f)``.
    """
    k = f.nvars if k is None else k
    if not is_lex_monic(f):
        raise InputError(f"{f} is not lexicographically monic")
    if any(m[k:] != (0,) * (f.nvars - k) for m in f.terms):
        raise InputError("f involves variables beyond the active block")
    top = f.degree() + 1
    for K in range(1 if smallest else top, top + 1):
        change = VariableChange(K, k)
        image = change.forward(f)
        if image.is_monic_in(k - 1):
            return change, image
    raise AssertionError("normalisation did not produce a monic polynomial")


def shift_last_variable(f: Poly, s: Poly, m: int, var: int, new_var: int) -> Poly:
    """Replace ``x_var`` by ``x_var + s^m * x_new_var``."""
    if s.involves(var):
        raise InputError("shift element must not involve the shifted variable")
    if m < 0:
        raise InputError("shift exponent must be non-negative")
    image = Poly.var(f.ring, f.nvars, var) + (s ** m) * Poly.var(f.ring, f.nvars, new_var)
    return f.substitute({var: image})


def bareiss_det(rows):
    """Fraction-free determinant of a square matrix of polynomials."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        raise InputError("empty matrix")
    zero = a[0][0] * 0
    sign = 1
    prev = zero + 1
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return zero
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * piv - a[i][k] * a[k][j]
                q = num.div_exact(prev) if not prev.is_one() else num
                if q is None:
                    raise ArithmeticError("Bareiss division was not exact")
                a[i][j] = q
            a[i][k] = zero
        prev = piv
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def sylvester_matrix(f: Poly, g: Poly, var: int):
    m, n = f.degree_in(var), g.degree_in(var)
    fc, gc = f.coeffs_in(var), g.coeffs_in(var)
    zero = Poly.zero(f.ring, f.nvars)
    size = m + n
    rows = []
    for i in range(n):
        rows.append([fc.get(m - (j - i), zero) if 0 <= j - i <= m else zero for j in range(size)])
    for i in range(m):
        rows.append([gc.get(n - (j - i), zero) if 0 <= j - i <= n else zero for j in range(size)])
    return rows


def resultant(f: Poly, g: Poly, var: int) -> Poly:
    """Sylvester resultant of ``f`` and ``g`` with respect to ``x_var``."""
    if f.degree_in(var) <= 0:
        raise InputError("resultant needs f of positive degree in the variable")
    if g.is_zero():
        return Poly.zero(f.ring, f.nvars)
    if g.degree_in(var) == 0:
        return g ** f.degree_in(var)
    return bareiss_det(sylvester_matrix(f, g, var))
