"""Lex Groebner bases with cofactor tracking, and the ideal certificates built on them.

Over a field this is plain Buchberger with the product and chain criteria.
Over ZZ it computes a strong Groebner basis (S- and G-polynomials); the
contract restricts that case to univariate rings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from operator import add

from ..errors import UnsupportedRingError
from .coeffs import ZZ
from .ops import is_lex_monic
from .poly import Poly


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


@dataclass
class _Elem:
    poly: Poly
    cof: list | None

    def combine(self, c, mon, other: "_Elem"):
        """Return self - c*x^mon*other."""
        poly = self.poly - other.poly.mul_term(mon, c)
        cof = None
        if self.cof is not None:
            cof = [a - b.mul_term(mon, c) for a, b in zip(self.cof, other.cof)]
        return _Elem(poly, cof)

    def scaled(self, c):
        return _Elem(self.poly.scale(c), None if self.cof is None else [a.scale(c) for a in self.cof])

    def times(self, c, mon):
        return _Elem(self.poly.mul_term(mon, c), None if self.cof is None else [a.mul_term(mon, c) for a in self.cof])

    def plus(self, other):
        return _Elem(self.poly + other.poly, None if self.cof is None else [a + b for a, b in zip(self.cof, other.cof)])


def _check_supported(ring, nvars):
    if ring.kind == ZZ and nvars > 1:
        raise UnsupportedRingError("Groebner bases over ZZ are only supported in one variable")


def _reduce(h: _Elem, basis: list[_Elem]) -> _Elem:
    """Full normal form of ``h``; over ZZ only coefficient-divisible steps are taken."""
    ring = h.poly.ring
    done = {}
    cur = h
    while cur.poly.terms:
        m = cur.poly.lm()
        c = cur.poly.terms[m]
        for g in basis:
            gm = g.poly.lm()
            if _divides(gm, m):
                q = ring.div_exact(c, g.poly.terms[gm])
                if q is not None:
                    cur = cur.combine(q, _sub(m, gm), g)
                    break
        else:
            done[m] = c
            rest = dict(cur.poly.terms)
            del rest[m]
            cur = _Elem(Poly._raw(ring, cur.poly.nvars, rest), cur.cof)
    return _Elem(Poly._raw(ring, h.poly.nvars, done), cur.cof)


@dataclass
class GroebnerBasis:
    """A (reduced, for fields; minimal strong, for ZZ) lex Groebner basis.

    ``cofactors[k][i]`` expresses ``basis[k]`` as ``sum_i cofactors[k][i] * gens[i]``
    when the basis was computed with tracking.
    """

    gens: list
    basis: list
    cofactors: list | None = field(default=None)

    def is_unit_ideal(self):
        return any(g.is_unit() for g in self.basis)

    def reduce(self, h: Poly):
        """Return ``(remainder, cofactors)`` with ``h - sum cof_i gens_i = remainder``."""
        zero = Poly.zero(h.ring, h.nvars)
        elems = [_Elem(g, c) for g, c in zip(self.basis, self.cofactors or [None] * len(self.basis))]
        tracked = self.cofactors is not None
        start = _Elem(h, [zero] * len(self.gens) if tracked else None)
        out = _reduce(start, elems)
        cof = None if out.cof is None else [-c for c in out.cof]
        return out.poly, cof

    def contains(self, h: Poly) -> bool:
        return self.reduce(h)[0].is_zero()


def _spoly(a: _Elem, b: _Elem):
    ring = a.poly.ring
    ma, mb = a.poly.lm(), b.poly.lm()
    L = _lcm(ma, mb)
    ca, cb = a.poly.terms[ma], b.poly.terms[mb]
    if ring.kind == ZZ:
        c = ca * cb // gcd(ca, cb)
        return a.times(c // ca, _sub(L, ma)).combine(c // cb, _sub(L, mb), b)
    return a.times(ring.inv(ca), _sub(L, ma)).combine(ring.inv(cb), _sub(L, mb), b)


def _gpoly(a: _Elem, b: _Elem):
    ma, mb = a.poly.lm(), b.poly.lm()
    L = _lcm(ma, mb)
    ca, cb = a.poly.terms[ma], b.poly.terms[mb]
    g, u, v = _xgcd(ca, cb)
    return a.times(u, _sub(L, ma)).plus(b.times(v, _sub(L, mb)))


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def groebner(gens, track=False) -> GroebnerBasis:
    """Compute a lex Groebner basis of ``gens``, optionally tracking cofactors."""
    gens = list(gens)
    if not gens:
        return GroebnerBasis([], [], [] if track else None)
    ring, nv = gens[0].ring, gens[0].nvars
    _check_supported(ring, nv)
    zz = ring.kind == ZZ
    zero = Poly.zero(ring, nv)
    one = Poly.const(ring, nv, 1)
    basis: list[_Elem] = []
    pairs = []

    def add_elem(e: _Elem):
        if not zz:
            e = e.scaled(ring.inv(e.poly.lc()))
        elif e.poly.lc() < 0:
            e = e.scaled(-1)
        k = len(basis)
        basis.append(e)
        for i in range(k):
            pairs.append((i, k))

    for i, g in enumerate(gens):
        cof = [one if j == i else zero for j in range(len(gens))] if track else None
        e = _reduce(_Elem(g, cof), basis)
        if e.poly.terms:
            add_elem(e)

    done = set()
    while pairs:
        pairs.sort(key=lambda p: sum(_lcm(basis[p[0]].poly.lm(), basis[p[1]].poly.lm())), reverse=True)
        i, j = pairs.pop()
        done.add((i, j))
        a, b = basis[i], basis[j]
        ma, mb = a.poly.lm(), b.poly.lm()
        L = _lcm(ma, mb)
        if not zz:
            if tuple(map(add, ma, mb)) == L:
                continue
            if any(
                k not in (i, j)
                and _divides(basis[k].poly.lm(), L)
                and tuple(sorted((i, k))) in done
                and tuple(sorted((j, k))) in done
                for k in range(len(basis))
            ):
                continue
        candidates = [_spoly(a, b)]
        if zz:
            ca, cb = a.poly.lc(), b.poly.lc()
            if ca % cb and cb % ca:
                candidates.append(_gpoly(a, b))
        for cand in candidates:
            h = _reduce(cand, basis)
            if h.poly.terms:
                add_elem(h)
        if any(e.poly.is_unit() for e in basis):
            break

    return _finalize(gens, basis, track)


def _finalize(gens, basis, track):
    ring = gens[0].ring
    zz = ring.kind == ZZ
    unit = next((e for e in basis if e.poly.is_unit()), None)
    if unit is not None:
        e = unit.scaled(ring.inv(unit.poly.lc()))
        return GroebnerBasis(gens, [e.poly], [e.cof] if track else None)

    def strongly_divides(g, h):
        if not _divides(g.poly.lm(), h.poly.lm()):
            return False
        return not zz or h.poly.lc() % g.poly.lc() == 0

    minimal = []
    for idx, e in enumerate(basis):
        redundant = False
        for jdx, f in enumerate(basis):
            if jdx == idx or not strongly_divides(f, e):
                continue
            # keep the earliest of mutually dividing duplicates
            if strongly_divides(e, f) and idx < jdx:
                continue
            redundant = True
            break
        if not redundant:
            minimal.append(e)
    reduced = []
    for k, e in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        if zz:
            reduced.append(e)
            continue
        lead = Poly._raw(ring, e.poly.nvars, {e.poly.lm(): e.poly.lc()})
        tail = _reduce(_Elem(e.poly - lead, e.cof), others)
        reduced.append(_Elem(lead + tail.poly, tail.cof))
    reduced.sort(key=lambda e: e.poly.lm(), reverse=True)
    return GroebnerBasis(gens, [e.poly for e in reduced], [e.cof for e in reduced] if track else None)

