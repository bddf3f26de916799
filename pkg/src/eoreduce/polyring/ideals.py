"""Ideal-theoretic certificates: membership, Bezout identities, lex-monic
elements and radical containment (Rabinowitsch trick)."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import UnsupportedRingError
from .groebner import GroebnerBasis, groebner
from .ops import is_lex_monic
from .poly import Poly


def groebner_basis(gens) -> list:
    """Reduced lex Groebner basis (minimal strong basis over ZZ)."""
    return groebner([g for g in gens if g.terms]).basis


def ideal_membership(h: Poly, gens):
    """Cofactors ``a`` with ``sum a_i gens_i = h``, or ``None`` if ``h`` is not in the ideal."""
    gens = list(gens)
    zero = Poly.zero(h.ring, h.nvars)
    if h.is_zero():
        return [zero] * len(gens)
    nz = [i for i, g in enumerate(gens) if g.terms]
    if not nz:
        return None
    gb = groebner([gens[i] for i in nz], track=True)
    rem, cof = gb.reduce(h)
    if not rem.is_zero():
        return None
    out = [zero] * len(gens)
    for i, c in zip(nz, cof):
        out[i] = c
    assert sum((a * g for a, g in zip(out, gens)), zero) == h
    return out


def bezout_combination(elems):
    """Cofactors ``t`` with ``sum t_i elems_i = 1``, or ``None``."""
    elems = list(elems)
    if not elems:
        return None
    # cheap path: a unit entry
    for i, e in enumerate(elems):
        if e.is_unit():
            zero = Poly.zero(e.ring, e.nvars)
            return [Poly.const(e.ring, e.nvars, e.ring.inv(e.constant_value())) if j == i else zero
                    for j in range(len(elems))]
    return ideal_membership(Poly.const(elems[0].ring, elems[0].nvars, 1), elems)


def combine(cofactors, gens):
    zero = Poly.zero(gens[0].ring, gens[0].nvars)
    return sum((a * g for a, g in zip(cofactors, gens)), zero)


def ideal_contains_lex_monic(gens):
    """Witness cofactors ``f`` with ``sum f_i gens_i`` lexicographically monic, or ``None``.

    Over a field any nonzero element can be normalised, so the generator with
    the smallest leading monomial is used.  Over ZZ the strong Groebner basis
    contains a lex-monic element iff the ideal does.
    """
    gens = list(gens)
    if not gens or all(g.is_zero() for g in gens):
        return None
    ring, nv = gens[0].ring, gens[0].nvars
    zero = Poly.zero(ring, nv)
    if ring.is_field:
        candidates = [i for i, g in enumerate(gens) if g.terms]
        i = min(candidates, key=lambda k: gens[k].lm())
        out = [zero] * len(gens)
        out[i] = Poly.const(ring, nv, ring.inv(gens[i].lc()))
        return out
    nz = [i for i, g in enumerate(gens) if g.terms]
    gb = groebner([gens[i] for i in nz], track=True)
    good = [k for k, b in enumerate(gb.basis) if ring.is_unit(b.lc())]
    if not good:
        return None
    k = min(good, key=lambda k: gb.basis[k].lm())
    sign = ring.inv(gb.basis[k].lc())
    out = [zero] * len(gens)
    for i, c in zip(nz, gb.cofactors[k]):
        out[i] = c.scale(sign)
    assert is_lex_monic(combine(out, gens))
    return out


@dataclass
class RadicalCertificate:
    """Rabinowitsch data: for each target ``g``, cofactors of ``1`` in ``base + (1 - t*g)``."""

    target: list
    base: list
    witnesses: list

    def replay(self) -> bool:
        for g, cof in zip(self.target, self.witnesses):
            if cof is None:
                return False
            gens = _rabinowitsch_gens(g, self.base)
            if not combine(cof, gens).is_one():
                return False
        return True


def _rabinowitsch_gens(g: Poly, base):
    nv = g.nvars
    t = Poly.var(g.ring, nv + 1, nv)
    return [b.extend(1) for b in base] + [1 - t * g.extend(1)]


def radical_contains(target, base):
    """Decide whether every ``target`` polynomial lies in the radical of ``<base>``.

    Returns ``(answer, certificate)``.  The certificate holds one Bezout identity
    per target in the ring with one extra variable; it is ``None`` entries when
    the answer is negative.
    """
    target, base = list(target), list(base)
    if target:
        ring = target[0].ring
    elif base:
        ring = base[0].ring
    else:
        return True, RadicalCertificate([], [], [])
    if not ring.is_field:
        raise UnsupportedRingError("radical membership needs a coefficient field")
    witnesses = []
    for g in target:
        if g.is_zero():
            witnesses.append([Poly.zero(ring, g.nvars + 1)] * len(base) + [Poly.const(ring, g.nvars + 1, 1)])
            continue
        gens = _rabinowitsch_gens(g, base)
        witnesses.append(bezout_combination(gens))
        if witnesses[-1] is None:
            return False, RadicalCertificate(target, base, witnesses)
    return True, RadicalCertificate(target, base, witnesses)


__all__ = [
    "GroebnerBasis",
    "RadicalCertificate",
    "bezout_combination",
    "combine",
    "groebner",
    "groebner_basis",
    "ideal_contains_lex_monic",
    "ideal_membership",
    "radical_contains",
]


def elimination_element(gens, var: int):
    """Lowest element of ``<gens>`` not involving ``x_var``, with cofactors, or ``None``.

    The Groebner basis is taken in a lex order with ``x_var`` moved to the top,
    so its members free of ``x_var`` generate the elimination ideal.
    """
    gens = list(gens)
    nz = [i for i, g in enumerate(gens) if g.terms]
    if not nz:
        return None
    nv = gens[nz[0]].nvars
    perm = [i + 1 if i < var else i for i in range(nv)]
    perm[var] = 0
    inv = [0] * nv
    for i, p in enumerate(perm):
        inv[p] = i
    gb = groebner([gens[i].permute(perm) for i in nz], track=True)
    free = [k for k, g in enumerate(gb.basis) if not g.involves(0)]
    if not free:
        return None
    k = min(free, key=lambda k: gb.basis[k].lm())
    elem = gb.basis[k].permute(inv)
    zero = Poly.zero(elem.ring, nv)
    out = [zero] * len(gens)
    for i, c in zip(nz, gb.cofactors[k]):
        out[i] = c.permute(inv)
    assert combine(out, gens) == elem
    return elem, out
