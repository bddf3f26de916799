"""Deterministic enumeration of small coefficients for certified searches."""

from __future__ import annotations

from itertools import combinations, count, product

from .polyring import Poly

DEFAULT_CAP = 4000


def _constants(ring, limit=4):
    if ring.kind == "Fp":
        return list(range(1, min(ring.modulus, limit + 1)))
    out = []
    for k in range(1, limit // 2 + 1):
        out += [k, -k]
    return out


def _monomials(nvars, degree):
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    for e in range(degree, -1, -1):
        for rest in _monomials(nvars - 1, degree - e):
            yield (e,) + rest


def coefficient_candidates(ring, nvars, max_degree=2, active=None):
    """Nonzero ``c * m`` for monomials ``m`` of degree up to ``max_degree``.

    ``active`` limits the variables that may appear (default: all).
    """
    active = nvars if active is None else active
    pad = (0,) * (nvars - active)
    out = []
    for d in range(max_degree + 1):
        for mon in _monomials(active, d):
            for c in _constants(ring):
                out.append(Poly.monomial(ring, mon + pad, c))
    return out


def coefficient_vectors(length, ring, nvars, cap=DEFAULT_CAP, active=None):
    """Vectors of coefficients in order of growing support, at most ``cap`` of them.

    The zero vector comes first, then vectors with one nonzero entry, then two.
    """
    zero = Poly.zero(ring, nvars)
    cands = coefficient_candidates(ring, nvars, active=active)
    produced = 0
    for support in count(0):
        if support > length:
            return
        for idx in combinations(range(length), support):
            for choice in product(cands, repeat=support):
                vec = [zero] * length
                for k, c in zip(idx, choice):
                    vec[k] = c
                yield vec
                produced += 1
                if produced >= cap:
                    return
