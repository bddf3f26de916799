"""Split orthogonal groups O(2r) and O(2r+1) over a polynomial ring.

Rows and columns are laid out in the order ``1..r, (0), -r..-1``.  A word
is a sequence of transvections whose *product* is ``w[0] * w[1] * ...``, so
the rightmost factor acts on a column first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, UnsupportedRingError
from .polyring import Poly, bareiss_det, bezout_combination, parse_poly
from .polyring.ideals import ideal_membership

LONG, SHORT = "long", "short"


def layout(r: int, odd: bool) -> list[int]:
    return list(range(1, r + 1)) + ([0] if odd else []) + list(range(-r, 0))


def position(i: int, r: int, odd: bool) -> int:
    if 1 <= i <= r:
        return i - 1
    if i == 0 and odd:
        return r
    if -r <= i <= -1:
        return 2 * r + (1 if odd else 0) + i
    raise InputError(f"index {i} invalid for r={r}, odd={odd}")


def _need_odd_char(ring, odd):
    if odd and ring.characteristic == 2:
        raise UnsupportedRingError("odd orthogonal groups need characteristic != 2")


# vectors ---------------------------------------------------------------

@dataclass(frozen=True)
class OrthoVector:
    r: int
    odd: bool
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != 2 * self.r + self.odd:
            raise InputError("vector length does not match rank and parity")

    def __getitem__(self, i: int) -> Poly:
        return self.entries[position(i, self.r, self.odd)]

    @property
    def ring(self):
        return self.entries[0].ring

    @property
    def nvars(self):
        return self.entries[0].nvars

    @classmethod
    def basis(cls, ring, nvars, r, odd, index=1):
        zero, one = Poly.zero(ring, nvars), Poly.const(ring, nvars, 1)
        k = position(index, r, odd)
        return cls(r, odd, tuple(one if p == k else zero for p in range(2 * r + odd)))

    @classmethod
    def from_dict(cls, ring, nvars, r, odd, values: dict):
        zero = Poly.zero(ring, nvars)
        entries = [zero] * (2 * r + odd)
        for i, v in values.items():
            entries[position(i, r, odd)] = v if isinstance(v, Poly) else Poly.const(ring, nvars, v)
        return cls(r, odd, tuple(entries))

    def map(self, fn) -> "OrthoVector":
        return OrthoVector(self.r, self.odd, tuple(fn(e) for e in self.entries))

    def plus(self) -> list:
        return [self[i] for i in range(1, self.r + 1)]

    def minus(self) -> list:
        """``(b_{-r}, ..., b_{-1})``."""
        return [self[i] for i in range(-self.r, 0)]

    def to_json(self):
        return [str(e) for e in self.entries]

    @classmethod
    def from_json(cls, data, ring, nvars, r, odd):
        return cls(r, odd, tuple(parse_poly(t, ring, nvars) for t in data))


def quad_form(x: OrthoVector) -> Poly:
    total = x[0] * x[0] if x.odd else Poly.zero(x.ring, x.nvars)
    for i in range(1, x.r + 1):
        total = total + x[i] * x[-i]
    return total


def bilinear_form(x: OrthoVector, y: OrthoVector) -> Poly:
    if (x.r, x.odd) != (y.r, y.odd):
        raise InputError("bilinear form of vectors with different shapes")
    total = (x[0] * y[0]).scale(2) if x.odd else Poly.zero(x.ring, x.nvars)
    for i in range(1, x.r + 1):
        total = total + x[i] * y[-i] + x[-i] * y[i]
    return total


# transvections -----------------------------------------------------------

@dataclass(frozen=True)
class Transvection:
    """``T_{i,j}(xi)``; short when ``j == 0``."""

    i: int
    j: int
    xi: Poly

    def __post_init__(self):
        if self.j == 0:
            if self.i == 0:
                raise InputError("T_{0,0} is not a transvection")
        elif self.i in (self.j, -self.j) or self.i == 0:
            raise InputError(f"invalid long index pair ({self.i}, {self.j})")

    @property
    def kind(self):
        return SHORT if self.j == 0 else LONG

    def check_shape(self, r, odd):
        for k in (self.i, self.j):
            position(k, r, odd)
        if self.kind == SHORT and not odd:
            raise InputError("short transvections need odd parity")

    def canonical(self) -> "Transvection":
        if self.kind == SHORT:
            return self
        other = Transvection(-self.j, -self.i, -self.xi)

        def key(t):
            return (abs(t.i), abs(t.j), t.i < 0, t.j < 0)

        return other if key(other) < key(self) else self

    def inverse(self) -> "Transvection":
        return Transvection(self.i, self.j, -self.xi)

    def act(self, entries: list, r: int, odd: bool):
        """Left-multiply the column stored in ``entries`` in place."""
        xi = self.xi
        if xi.is_zero():
            return
        pi, pmi = position(self.i, r, odd), position(-self.i, r, odd)
        if self.kind == LONG:
            pj, pmj = position(self.j, r, odd), position(-self.j, r, odd)
            bi = entries[pi] + xi * entries[pj]
            bmj = entries[pmj] - xi * entries[pmi]
            entries[pi], entries[pmj] = bi, bmj
        else:
            p0 = position(0, r, odd)
            b0, bmi = entries[p0], entries[pmi]
            entries[pi] = entries[pi] + (xi * b0).scale(2) - xi * xi * bmi
            entries[p0] = b0 - xi * bmi

    def substitute(self, images: dict) -> "Transvection":
        return Transvection(self.i, self.j, self.xi.substitute(images))

    def map(self, fn) -> "Transvection":
        return Transvection(self.i, self.j, fn(self.xi))

    def to_json(self):
        return {"kind": self.kind, "i": self.i, "j": self.j, "xi": str(self.xi)}

    @classmethod
    def from_json(cls, data, ring, nvars):
        try:
            t = cls(int(data["i"]), int(data["j"]), parse_poly(data["xi"], ring, nvars))
        except KeyError as exc:
            raise InputError(f"transvection missing {exc}") from None
        if data.get("kind", t.kind) != t.kind:
            raise InputError(f"kind {data.get('kind')!r} does not match indices")
        return t


class Word(tuple):
    """A tuple of transvections; zero-parameter factors are dropped."""

    def __new__(cls, factors=()):
        return super().__new__(cls, (t for t in factors if not t.xi.is_zero()))

    def __add__(self, other):
        return Word(tuple(self) + tuple(other))

    def map(self, fn) -> "Word":
        return Word(t.map(fn) for t in self)

    def substitute(self, images) -> "Word":
        return Word(t.substitute(images) for t in self)

    def canonical(self) -> "Word":
        return Word(t.canonical() for t in self)

    def to_json(self):
        return [t.to_json() for t in self]

    @classmethod
    def from_json(cls, data, ring, nvars):
        return cls(Transvection.from_json(d, ring, nvars) for d in data)


def word_inverse(w) -> Word:
    return Word(t.inverse() for t in reversed(tuple(w)))


def apply_word(w, b: OrthoVector) -> OrthoVector:
    """Column ``product(w) * b`` computed factor by factor, right to left."""
    _need_odd_char(b.ring, b.odd)
    entries = list(b.entries)
    for t in reversed(tuple(w)):
        t.check_shape(b.r, b.odd)
        t.act(entries, b.r, b.odd)
    return OrthoVector(b.r, b.odd, tuple(entries))


# matrices ------------------------------------------------------------------

@dataclass(frozen=True)
class OrthoMatrix:
    r: int
    odd: bool
    rows: tuple

    @property
    def size(self):
        return 2 * self.r + self.odd

    @property
    def ring(self):
        return self.rows[0][0].ring

    @property
    def nvars(self):
        return self.rows[0][0].nvars

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[position(i, self.r, self.odd)][position(j, self.r, self.odd)]

    @classmethod
    def identity(cls, ring, nvars, r, odd):
        return cls(r, odd, tuple(map(tuple, identity_matrix(ring, nvars, 2 * r + odd))))

    def column(self, j: int) -> OrthoVector:
        p = position(j, self.r, self.odd)
        return OrthoVector(self.r, self.odd, tuple(row[p] for row in self.rows))

    def columns(self):
        return [self.column(j) for j in layout(self.r, self.odd)]

    def __matmul__(self, other: "OrthoMatrix") -> "OrthoMatrix":
        return OrthoMatrix(self.r, self.odd, tuple(map(tuple, matmul(self.rows, other.rows))))

    def to_json(self):
        return [[str(e) for e in row] for row in self.rows]

    @classmethod
    def from_json(cls, data, ring, nvars, r, odd):
        rows = tuple(tuple(parse_poly(t, ring, nvars) for t in row) for row in data)
        if len(rows) != 2 * r + odd or any(len(row) != len(rows) for row in rows):
            raise InputError("matrix shape does not match rank and parity")
        return cls(r, odd, rows)


def identity_matrix(ring, nvars, n):
    zero, one = Poly.zero(ring, nvars), Poly.const(ring, nvars, 1)
    return [[one if a == b else zero for b in range(n)] for a in range(n)]


def matmul(a, b):
    n, m, k = len(a), len(b), len(b[0])
    zero = a[0][0] * 0
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = zero
            for t in range(m):
                if a[i][t].terms and b[t][j].terms:
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def transvection_matrix(t: Transvection, r: int, odd: bool, ring, nvars) -> OrthoMatrix:
    t.check_shape(r, odd)
    rows = identity_matrix(ring, nvars, 2 * r + odd)
    pos = lambda k: position(k, r, odd)  # noqa: E731
    xi = t.xi
    if t.kind == LONG:
        rows[pos(t.i)][pos(t.j)] = rows[pos(t.i)][pos(t.j)] + xi
        rows[pos(-t.j)][pos(-t.i)] = rows[pos(-t.j)][pos(-t.i)] - xi
    else:
        rows[pos(t.i)][pos(0)] = rows[pos(t.i)][pos(0)] + xi.scale(2)
        rows[pos(0)][pos(-t.i)] = rows[pos(0)][pos(-t.i)] - xi
        rows[pos(t.i)][pos(-t.i)] = rows[pos(t.i)][pos(-t.i)] - xi * xi
    return OrthoMatrix(r, odd, tuple(map(tuple, rows)))


def word_product(w, r, odd, ring, nvars) -> OrthoMatrix:
    """Matrix of a word, built by acting on every basis column."""
    cols = [apply_word(w, OrthoVector.basis(ring, nvars, r, odd, j)).entries for j in layout(r, odd)]
    n = 2 * r + odd
    return OrthoMatrix(r, odd, tuple(tuple(cols[c][row] for c in range(n)) for row in range(n)))


def apply_word_matrix(w, g: OrthoMatrix) -> OrthoMatrix:
    cols = [apply_word(w, c).entries for c in g.columns()]
    n = g.size
    return OrthoMatrix(g.r, g.odd, tuple(tuple(cols[c][row] for c in range(n)) for row in range(n)))


def is_orthogonal(g: OrthoMatrix) -> bool:
    cols = g.columns()
    basis = [OrthoVector.basis(g.ring, g.nvars, g.r, g.odd, j) for j in layout(g.r, g.odd)]
    for a in range(len(cols)):
        if quad_form(cols[a]) != quad_form(basis[a]):
            return False
        for b in range(a + 1, len(cols)):
            if bilinear_form(cols[a], cols[b]) != bilinear_form(basis[a], basis[b]):
                return False
    return True


def antidiagonal_transpose(g):
    """``(g^T~)_{a,b} = g_{n-1-b, n-1-a}`` for a square list-of-rows matrix."""
    n = len(g)
    if any(len(row) != n for row in g):
        raise InputError("antidiagonal transpose needs a square matrix")
    return [[g[n - 1 - b][n - 1 - a] for b in range(n)] for a in range(n)]


def is_isotropic_unimodular(b: OrthoVector):
    """Return ``(answer, bezout cofactors or None)``.

    In odd parity the unimodularity test uses ``2*b_0`` in place of ``b_0``.
    """
    _need_odd_char(b.ring, b.odd)
    if not quad_form(b).is_zero():
        return False, None
    row = list(b.entries)
    if b.odd:
        p0 = position(0, b.r, b.odd)
        row[p0] = row[p0].scale(2)
    cof = bezout_combination(row)
    return cof is not None, cof


# GL(r) side --------------------------------------------------------------
# GL words are lists of (i, j, xi) with 1-based 1 <= i != j <= r.

def gl_transvection_matrix(i, j, xi, r):
    rows = identity_matrix(xi.ring, xi.nvars, r)
    rows[i - 1][j - 1] = rows[i - 1][j - 1] + xi
    return rows


def gl_word_product(glw, r, ring, nvars):
    out = identity_matrix(ring, nvars, r)
    for i, j, xi in reversed(list(glw)):
        # left multiplication by t_{i,j}(xi): row i += xi * row j
        out[i - 1] = [a + xi * b for a, b in zip(out[i - 1], out[j - 1])]
    return out


def gl_word_clean(glw):
    return [(i, j, xi) for i, j, xi in glw if not xi.is_zero()]


def gl_word_antitranspose(glw, r):
    """Word for the antidiagonal transpose of the product."""
    return [(r + 1 - j, r + 1 - i, xi) for i, j, xi in reversed(list(glw))]


def gl_inverse(g):
    """Inverse over the ring via the adjugate; requires a unit determinant."""
    n = len(g)
    det = bareiss_det(g)
    if not det.is_unit():
        raise InputError("matrix is not invertible over the ring")
    dinv = det.ring.inv(det.constant_value())
    inv = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            minor = [row[:b] + row[b + 1:] for k, row in enumerate(g) if k != a]
            c = bareiss_det(minor) if minor else det * 0 + 1
            inv[b][a] = c.scale(dinv * (-1 if (a + b) % 2 else 1))
    assert matmul(g, inv) == identity_matrix(det.ring, det.nvars, n)
    return inv


def hyperbolic_embed(g, odd=False) -> OrthoMatrix:
    """``g -> diag(g, (g^-1)^T~)``, with a central 1 in odd parity."""
    r = len(g)
    ring, nvars = g[0][0].ring, g[0][0].nvars
    low = antidiagonal_transpose(gl_inverse(g))
    n = 2 * r + odd
    rows = identity_matrix(ring, nvars, n)
    off = r + odd
    for a in range(r):
        for b in range(r):
            rows[a][b] = g[a][b]
            rows[off + a][off + b] = low[a][b]
    return OrthoMatrix(r, odd, tuple(map(tuple, rows)))


def embed_gl_word(glw, r=None) -> Word:
    out = []
    for i, j, xi in glw:
        if i == j or i < 1 or j < 1 or (r is not None and (i > r or j > r)):
            raise InputError(f"bad GL transvection indices ({i}, {j})")
        out.append(Transvection(i, j, xi))
    return Word(out)


def mu(u, s: Poly, v):
    """``mu(u,s,v) = [[1 + v s u, v s^2], [-u v u, 1 - u v s]]`` as a list of rows."""
    n = len(u)
    if len(v) != n or n < 1:
        raise InputError("mu needs u and v of equal length r-1 >= 1")
    uv = sum((a * b for a, b in zip(u, v)), s * 0)
    one = s * 0 + 1
    rows = []
    for a in range(n):
        row = [(one if a == b else one * 0) + v[a] * s * u[b] for b in range(n)]
        row.append(v[a] * s * s)
        rows.append(row)
    rows.append([-(uv * u[b]) for b in range(n)] + [one - uv * s])
    return rows


def mu_word(u, s: Poly, v):
    """A GL word of length at most ``6r - 2`` (``3(r-1)`` for unit ``s``) multiplying to ``mu(u,s,v)``.

    Uses ``mu = 1 + w z`` with ``w = (v s; -u v)``, ``z = (u, s)``, ``z w = 0``.
    The part of ``v`` on coordinate 1 and the rest each give a commutator
    ``[1 + w' e_l^T, 1 + e_l z']`` around a coordinate ``l`` that ``w'`` misses.
    """
    n = len(u)
    r = n + 1
    if r < 3:
        raise InputError("mu_word needs r >= 3")
    if all(x.is_zero() for x in v):
        return []
    if s.is_unit():
        sinv = s.ring.inv(s.constant_value())
        lower = [(r, j + 1, u[j].scale(sinv)) for j in range(n)]
        upper = [(i + 1, r, v[i] * s * s) for i in range(n)]
        word = [(i, j, -x) for i, j, x in lower] + upper + lower
        return gl_word_clean(word)
    zero = s * 0
    z = list(u) + [s]
    word = []
    for support, l in (([0], 1), (list(range(1, n)), 0)):
        part = [v[k] if k in support else zero for k in range(n)]
        if all(x.is_zero() for x in part):
            continue
        w = [p * s for p in part] + [-sum((a * b for a, b in zip(u, part)), zero)]
        zl = [zero if k == l else z[k] for k in range(r)]
        x_fac = [(k + 1, l + 1, w[k] * (z[l] + 1)) for k in range(r) if k != l]
        x_inv = [(k + 1, l + 1, -w[k]) for k in range(r) if k != l]
        y_fac = [(l + 1, k + 1, zl[k]) for k in range(r) if k != l]
        y_inv = [(i, j, -x) for i, j, x in y_fac]
        # (1 + u_l w e_l^T)(1 + w e_l^T) Y X^-1 Y^-1
        word += x_fac + y_fac + x_inv + y_inv
    return gl_word_clean(word)


# Theta and the unipotent radical -----------------------------------------

def theta_check(M) -> bool:
    r = len(M)
    for a in range(r):
        if not M[a][r - 1 - a].is_zero():
            return False
        for b in range(r):
            if M[r - 1 - b][r - 1 - a] != -M[a][b]:
                return False
    return True


def unipotent_embed(M, odd=False) -> OrthoMatrix:
    """``U(M) = [[1, 0], [M, 1]]`` (central 1 in odd parity)."""
    if not theta_check(M):
        raise InputError("matrix is not in Theta(r)")
    r = len(M)
    ring, nvars = M[0][0].ring, M[0][0].nvars
    rows = identity_matrix(ring, nvars, 2 * r + odd)
    for a in range(r):
        for b in range(r):
            rows[r + odd + a][b] = M[a][b]
    return OrthoMatrix(r, odd, tuple(map(tuple, rows)))


def unipotent_word(M) -> Word:
    """One factor ``T_{-i,j}(M[r-i][j])`` per pair ``j < i``; factors commute."""
    if not theta_check(M):
        raise InputError("matrix is not in Theta(r)")
    r = len(M)
    return Word(Transvection(-i, j, M[r - i][j - 1]) for i in range(2, r + 1) for j in range(1, i))


def solve_theta(b_plus, b_minus, s: Poly | None = None, cofactors=None):
    """Find ``M`` in Theta with ``M b_plus = b_minus``, or ``None``.

    ``b_minus`` is ordered ``(b_{-r}, ..., b_{-1})`` and must satisfy
    ``sum b_i b_{-i} = 0``.  With ``a . b_plus = s`` (``cofactors`` or found
    by ideal membership) and ``s | b_minus``, the alternating matrix
    ``K = d a^T - a d^T`` built from ``d = J b_minus / s`` solves ``K b_plus = J b_minus``.
    """
    r = len(b_plus)
    ring, nvars = b_plus[0].ring, b_plus[0].nvars
    zero = Poly.zero(ring, nvars)
    if len(b_minus) != r:
        raise InputError("b_plus and b_minus must have the same length")
    if sum((b_plus[i] * b_minus[r - 1 - i] for i in range(r)), zero) != zero:
        raise InputError("columns are not orthogonal: sum b_i b_-i != 0")
    if all(x.is_zero() for x in b_minus):
        return [[zero] * r for _ in range(r)]
    if s is None or s.is_unit():
        a = bezout_combination(b_plus) if cofactors is None else cofactors
        if a is None:
            return None
        if s is not None:
            a = [x.scale(ring.inv(s.constant_value())) for x in a]
        d = list(reversed(b_minus))
    else:
        a = cofactors if cofactors is not None else ideal_membership(s, b_plus)
        if a is None:
            return None
        d = []
        for x in reversed(b_minus):
            q = x.div_exact(s)
            if q is None:
                return None
            d.append(q)
    K = [[d[p] * a[q] - a[p] * d[q] for q in range(r)] for p in range(r)]
    M = [K[r - 1 - p] for p in range(r)]
    return M


def theta_apply(M, b_plus):
    zero = b_plus[0] * 0
    return [sum((M[p][q] * b_plus[q] for q in range(len(b_plus))), zero) for p in range(len(M))]
