"""Eliminate the last active variable ``y`` from a column with ``b_-2`` monic in ``y``,
and finish over the coefficient field.

A round prepares the column so that ``<b_1..b_{r-1}>`` meets ``B`` in an
element ``s`` avoiding given maximal ideals, then shifts ``y -> y + s^m z``.
After enough rounds the ``s_i^{m_i}`` are comaximal and specializing the
``z_i`` to multiples of ``y`` sends ``y`` to ``0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import sympy

from .errors import CertificateError, InputError, SearchCapError, UnsupportedRingError
from .monicphase import active_vars
from .orthocore import (
    OrthoVector,
    Transvection,
    Word,
    apply_word,
    embed_gl_word,
    mu_word,
    solve_theta,
    theta_apply,
    unipotent_word,
)
from .polyring import (
    Poly,
    bezout_combination,
    combine,
    elimination_element,
    ideal_membership,
    resultant,
    shift_last_variable,
)
from .search import DEFAULT_CAP, coefficient_vectors


def prepare_budget(r, odd):
    return math.ceil((r - 1) / 2) + 2 + (1 if odd else 0)


def shift_budget(r, odd):
    return r * (r - 1) // 2 + (9 * r - 5 if odd else 8 * r - 4)


def round_budget(r, odd):
    return prepare_budget(r, odd) + shift_budget(r, odd)


def base_budget(r, odd):
    return 9 * r - 8 if odd else 8 * r - 8


# maximal ideals of B -------------------------------------------------------

def coefficient_dimension(ring, yv: int) -> int:
    """Krull dimension of ``B = C[x_1..x_yv]``, with ``y = x_{yv+1}``."""
    return yv + ring.declared_dim


def _to_sympy_univariate(f: Poly, var: int):
    t = sympy.Symbol("t")
    expr = sum(sympy.Integer(int(c)) * t ** m[var] if f.ring.kind != "QQ"
               else sympy.Rational(c.numerator, c.denominator) * t ** m[var]
               for m, c in f.terms.items())
    return sympy.Poly(expr, t, modulus=f.ring.modulus) if f.ring.kind == "Fp" else sympy.Poly(expr, t, domain="QQ")


def _from_sympy_univariate(p, ring, nvars, var):
    out = Poly.zero(ring, nvars)
    for (e,), c in p.terms():
        c = int(c) if ring.kind == "Fp" else sympy.Rational(c)
        c = c if ring.kind == "Fp" else ring.coerce(f"{c}")
        out = out + Poly.var(ring, nvars, var, e).scale(c)
    return out


def choose_max_ideals(ring, nvars: int, yv: int, exclusions=()):
    """Generators of finitely many maximal ideals of ``B`` for the next round.

    * ``B`` a field: no ideals.
    * ``B = ZZ``: the primes dividing the previous ``s`` values.
    * ``B = F[t]``: ``(t)`` in the first round, then the irreducible factors
      of the previous ``s`` values.
    """
    dim = coefficient_dimension(ring, yv)
    if dim == 0:
        return []
    exclusions = [e for e in exclusions if not e.is_zero()]
    if ring.kind == "ZZ" and yv == 0:
        content = math.prod(abs(int(e.constant_value())) for e in exclusions) if exclusions else 1
        return [Poly.const(ring, nvars, p) for p in sorted(sympy.factorint(content))] if content > 1 else \
            ([Poly.const(ring, nvars, 2)] if not exclusions else [])
    if not ring.is_field or dim != 1:
        raise UnsupportedRingError(f"coefficient rings of dimension {dim} over {ring} are not effective here")
    if not exclusions:
        return [Poly.var(ring, nvars, 0)]
    out = []
    for e in exclusions:
        if any(e.involves(v) for v in range(1, nvars)):
            raise InputError("exclusion data must lie in B")
        if e.is_constant():
            continue
        _, factors = _to_sympy_univariate(e, 0).factor_list()
        for fac, _mult in factors:
            g = _from_sympy_univariate(fac, ring, nvars, 0).monic()
            if g not in out:
                out.append(g)
    return out


def _modulus(ideals):
    return math.prod(ideals[1:], start=ideals[0]) if ideals else None


def unimodular_mod(row, ideals):
    """Cofactors for ``1`` in ``<row> + P_1...P_m`` (just ``<row>`` without ideals)."""
    gens = list(row) + ([_modulus(ideals)] if ideals else [])
    return bezout_combination(gens)


def avoids(s: Poly, ideals) -> bool:
    if s.is_zero():
        return False
    if not ideals:
        return s.is_unit()
    return all(ideal_membership(s, [p]) is None for p in ideals)


# PrepareToAddToY -----------------------------------------------------------

@dataclass
class PrepareResult:
    word: Word
    column: OrthoVector
    s: Poly
    cofactors: list
    steps: list = field(default_factory=list)
    resultant: Poly | None = None


def _rows(r):
    pos = list(range(1, r + 1))

    def upto(i):
        """Row ``(b_1, ..., b_{-i})``; ``i = r + 1`` means ``(b_1..b_r)``."""
        return tuple(pos + list(range(-r, -i + 1))) if i <= r else tuple(pos)

    return upto


def _passing(b, make, target, ideals, cap):
    for (xi,) in coefficient_vectors(1, b.ring, b.nvars, cap, active=active_vars(b)):
        frag = make(xi)
        new = apply_word(frag, b)
        if unimodular_mod([new[i] for i in target], ideals) is not None:
            yield frag, new


def _search_one(b, make, target, ideals, cap, label):
    for found in _passing(b, make, target, ideals, cap):
        return found
    raise SearchCapError(f"no coefficient within {cap} candidates", label)


def divmod_in_var(f: Poly, g: Poly, var: int):
    """Division by ``g`` monic in ``x_var``, treating other variables as coefficients."""
    if not g.is_monic_in(var):
        raise InputError("divisor must be monic in the variable")
    e = g.degree_in(var)
    q = Poly.zero(f.ring, f.nvars)
    while not f.is_zero() and f.degree_in(var) >= e:
        d = f.degree_in(var)
        lead = f.coeffs_in(var)[d] * Poly.var(f.ring, f.nvars, var, d - e)
        q = q + lead
        f = f - lead * g
    return q, f


def small_cofactors(cof, row, var):
    """Reduce ``cof[1:]`` modulo the monic ``row[0]`` and absorb the quotients into ``cof[0]``."""
    out = list(cof)
    for i in range(1, len(row)):
        q, rem = divmod_in_var(out[i], row[0], var)
        out[i] = rem
        out[0] = out[0] + q * row[i]
    return out


def _meet_B(row, yv, ideals):
    found = elimination_element(row, yv)
    if found is None:
        return None
    s, cof = found
    if any(s.involves(v) for v in range(yv, s.nvars)) or not avoids(s, ideals):
        return None
    return s, small_cofactors(cof, row, yv)


def prepare_add(b: OrthoVector, yv: int, ideals, cap: int = DEFAULT_CAP, choices: int = 24) -> PrepareResult:
    """Transvections making ``b_1`` monic in ``y`` and ``(b_1..b_{r-1})`` unimodular mod each ideal.

    Returns the word together with ``s = res_y(b_1, f)`` and cofactors of
    ``s`` in ``<b_1..b_{r-1}>``.
    """
    r, odd = b.r, b.odd
    if r < 3:
        raise InputError("prepare_add needs r >= 3")
    if not b[-2].is_monic_in(yv):
        raise InputError("b_-2 must be monic in y")
    upto = _rows(r)
    steps = []
    cur = b
    word = Word()

    def push(label, frag, new):
        nonlocal cur, word
        steps.append((label, len(frag)))
        word = Word(frag) + word
        cur = new

    if odd:
        frag, new = _search_one(cur, lambda xi: Word([Transvection(1, 0, xi)]),
                                upto(1), ideals, cap, "P0")
        push("P0", frag, new)

    # Step 1: xi = xi~ + y^K b_-2; keep the admissible choice giving b_1 the lowest degree
    y = Poly.var(b.ring, b.nvars, yv)
    bm2 = cur[-2]
    t1 = upto(2)
    best = None
    for tries, (xt,) in enumerate(coefficient_vectors(1, b.ring, b.nvars, cap, active=active_vars(cur))):
        trial = apply_word(Word([Transvection(1, -2, xt)]), cur)
        if unimodular_mod([trial[i] for i in t1], ideals) is None:
            continue
        top = cur[1].degree_in(yv) + 2 * max(bm2.degree_in(yv), 0) + xt.degree_in(yv) + 2
        for K in range(-1, top + 1):
            xi = xt if K < 0 else xt + y ** K * bm2
            frag = Word([Transvection(1, -2, xi)])
            new = apply_word(frag, cur)
            if new[1].is_monic_in(yv):
                if best is None or new[1].degree_in(yv) < best[1][1].degree_in(yv):
                    best = (frag, new)
                break
        if best is not None and (best[1][1].degree_in(yv) <= bm2.degree_in(yv) or tries >= choices):
            break
    if best is None:
        raise SearchCapError("no xi makes b_1 monic with a unimodular row", "P1")
    push("P1", *best)

    if r % 2 == 0:
        frag, new = _search_one(cur, lambda xi: Word([Transvection(-3, -2, xi)]), upto(3), ideals, cap, "P2")
        push("P2", frag, new)
    for i in range(5 if r % 2 == 0 else 4, r + 2, 2):
        frag, new = _search_one(cur, lambda xi, i=i: Word([Transvection(i - 1, -(i - 2), xi)]),
                                upto(i), ideals, cap, "P3")
        push("P3", frag, new)
    # Step 4: among the first few admissible xi keep the one with the smallest s
    best = None
    for tries, (frag, new) in enumerate(_passing(cur, lambda xi: Word([Transvection(r - 1, r, xi)]),
                                                 tuple(range(1, r)), ideals, cap)):
        got = _meet_B([new[i] for i in range(1, r)], yv, ideals)
        if got is not None and (best is None or got[0].degree() < best[2][0].degree()):
            best = (frag, new, got)
        if (best is not None and best[2][0].is_unit()) or tries + 1 >= choices:
            break
    if best is None:
        raise SearchCapError("no admissible coefficient for the last step", "P4")
    push("P4", best[0], best[1])
    s, cof = best[2]

    if len(word) > prepare_budget(r, odd):
        raise CertificateError("prepare word exceeds its budget")
    if cur[-2] != b[-2] or not cur[1].is_monic_in(yv):
        raise CertificateError("prepare steps broke the monic entries")

    # the resultant certifies that <b_1..b_{r-1}> meets B outside the ideals;
    # s generates that intersection, so it divides the resultant
    row = [cur[i] for i in range(1, r)]
    if cur[1].degree_in(yv) <= 0:
        res = cur[1]
    else:
        c = unimodular_mod(row, ideals)
        res = resultant(cur[1], combine(c[1:r - 1], row[1:]), yv)
    if res.involves(yv) or not avoids(res, ideals):
        raise CertificateError(f"resultant {res} meets a chosen maximal ideal")
    if combine(cof, row) != s:
        raise CertificateError("cofactors of s do not replay")
    return PrepareResult(word, cur, s, cof, steps, res)


# AddToY --------------------------------------------------------------------

def _quotient(num: Poly, den: Poly) -> Poly:
    q = num.div_exact(den)
    if q is None:
        raise CertificateError("expected exact division failed")
    return q


def add_to_y(b: OrthoVector, yv: int, zv: int, s: Poly, cofactors, max_k: int = 6):
    """Word ``w`` with ``w * b(y) = b(y + s^m z)``; returns ``(w, m)``.

    ``b`` must already live in the ring containing ``z = x_{zv+1}``, and
    ``cofactors`` satisfy ``sum a_i b_i = s`` over ``i = 1..r-1``.
    """
    r, odd = b.r, b.odd
    ring, nv = b.ring, b.nvars
    row = [b[i] for i in range(1, r)]
    if combine(cofactors, row) != s:
        raise InputError("cofactors do not represent s")
    if s.is_zero() or s.involves(yv) or s.involves(zv):
        raise InputError("s must be a nonzero element of B")
    z = Poly.var(ring, nv, zv)
    one = Poly.const(ring, nv, 1)
    ks = [0] if s.is_unit() else []
    ks += list(range(1, max_k + 1))
    for k in ks:
        m = k + 2
        T = s ** m * z
        shifted = b.map(lambda e: shift_last_variable(e, s, m, yv, zv))
        a_sh = [shift_last_variable(a, s, m, yv, zv) for a in cofactors]
        d = [_quotient(shifted[i] - b[i], T) for i in range(1, r)]
        br = b[r]
        u = [a * (one - br) for a in cofactors]
        v = [s ** k * z * di for di in d]
        uv = sum((p * q for p, q in zip(u, v)), Poly.zero(ring, nv))
        d_r = _quotient(shifted[r] - br, T)
        e = [a * (s ** (m - 1) * z * d_r + uv) for a in a_sh]
        glw = [(r, i + 1, e[i]) for i in range(r - 1)] + mu_word(u, s, v)
        top = embed_gl_word(glw, r)
        cur = apply_word(top, b)
        if [cur[i] for i in range(1, r + 1)] != shifted.plus():
            raise CertificateError("GL shift word did not reach b+(y + s^m z)")
        middle = Word()
        if odd:
            d_0 = _quotient(shifted[0] - b[0], T)
            middle = Word(Transvection(-(i + 1), 0, -a_sh[i] * s ** (m - 1) * z * d_0) for i in range(r - 1))
            cur = apply_word(middle, cur)
            if cur[0] != shifted[0]:
                raise CertificateError("middle entry not shifted")
        diff = [p - q for p, q in zip(shifted.minus(), cur.minus())]
        cof_plus = a_sh + [Poly.zero(ring, nv)]
        M = solve_theta(shifted.plus(), diff, s, cof_plus)
        if M is None or theta_apply(M, shifted.plus()) != diff:
            continue
        word = unipotent_word(M) + middle + top
        if apply_word(word, b) != shifted:
            raise CertificateError("shift word does not reproduce b(y + s^m z)")
        if len(word) > shift_budget(r, odd):
            raise CertificateError("shift word exceeds its budget")
        return word, m
    raise SearchCapError(f"no exponent k <= {max_k} makes the bottom difference solvable", "shift")


# KillTheVariable -----------------------------------------------------------

@dataclass
class EliminationRound:
    index: int
    ideals: list
    s: Poly
    m: int
    prepare_word: Word
    shift_word: Word
    prepare_steps: list

    def to_json(self):
        return {"round": self.index, "ideals": [str(p) for p in self.ideals], "s": str(self.s),
                "m": self.m, "prepare_length": len(self.prepare_word),
                "shift_length": len(self.shift_word)}


def _involves_y(b, yv):
    return any(e.involves(yv) for e in b.entries)


def kill_variable(b: OrthoVector, yv: int, cap: int = DEFAULT_CAP, max_rounds: int | None = None):
    """Return ``(word, column, rounds)`` where the column no longer involves ``y = x_{yv+1}``.

    Runs rounds until the ``s_i^{m_i}`` generate the unit ideal of ``B``:
    one round when ``B`` is a field, two when ``B = F[t]``.
    """
    r, odd = b.r, b.odd
    ring, nv = b.ring, b.nvars
    if any(e.involves(v) for e in b.entries for v in range(yv + 1, nv)):
        raise InputError("column involves variables beyond y")
    if not _involves_y(b, yv):
        return Word(), b, []
    if not ring.is_field:
        raise UnsupportedRingError("variable elimination needs a coefficient field")
    if not b[-2].is_monic_in(yv):
        raise InputError("b_-2 must be monic in y")
    delta = coefficient_dimension(ring, yv)
    if delta > 1:
        raise UnsupportedRingError("coefficient rings of dimension above one are not supported")
    limit = (delta + 1) if max_rounds is None else max_rounds
    total = nv + limit
    y_img = Poly.var(ring, total, yv)
    full = Word()
    rounds = []
    powers = []
    cur = b
    for idx in range(limit):
        ideals = choose_max_ideals(ring, nv, yv, [rd.s for rd in rounds])
        prep = prepare_add(cur, yv, ideals, cap)
        zv = nv + idx
        ext = prep.column.map(lambda e: e.extend(limit))
        shift, m = add_to_y(ext, yv, zv, prep.s.extend(limit), [c.extend(limit) for c in prep.cofactors])
        sub = {yv: y_img}
        full = shift.substitute(sub) + prep.word.map(lambda e: e.extend(limit)).substitute(sub) + full
        y_img = y_img + prep.s.extend(limit) ** m * Poly.var(ring, total, zv)
        rounds.append(EliminationRound(idx + 1, ideals, prep.s, m, prep.word, shift, prep.steps))
        powers.append(prep.s ** m)
        cur = prep.column
        if bezout_combination(powers) is not None:
            break
    t = bezout_combination(powers)
    if t is None:
        raise CertificateError("the s_i^m_i are not comaximal after all rounds")
    y_total = Poly.var(ring, total, yv)
    spec = {nv + i: -(y_total * t[i].extend(limit)) for i in range(len(powers))}
    for i in range(len(powers), limit):
        spec[nv + i] = Poly.zero(ring, total)
    word = Word(tr.map(lambda e: e.substitute(spec).truncate_vars(nv)) for tr in full)
    out = apply_word(word, b)
    expected = cur.map(lambda e: e.substitute({yv: Poly.zero(ring, nv)}))
    if out != expected or _involves_y(out, yv):
        raise CertificateError("specialized word does not kill y")
    if len(word) > len(rounds) * round_budget(r, odd):
        raise CertificateError("elimination word exceeds its round budget")
    return word, out, rounds


# base case over the coefficient field -----------------------------------------

def base_reduce(b: OrthoVector) -> Word:
    """Word taking an isotropic unimodular column with constant entries to ``e_1``."""
    ring, nv, r, odd = b.ring, b.nvars, b.r, b.odd
    if not ring.is_field:
        raise UnsupportedRingError("base reduction needs a coefficient field")
    if any(not e.is_constant() for e in b.entries):
        raise InputError("base reduction needs constant entries")
    one = Poly.const(ring, nv, 1)
    word = Word()
    cur = b

    def push(*trs):
        nonlocal word, cur
        frag = Word(trs)
        cur = apply_word(frag, cur)
        word = frag + word

    middle = [j for j in list(range(2, r + 1)) + list(range(-r, -1))]
    if not cur[1].is_one():
        if all(cur[j].is_zero() for j in middle):
            if not cur[1].is_zero():
                push(Transvection(2, 1, one))
            elif not cur[-1].is_zero():
                push(Transvection(2, -1, one))
            else:
                raise InputError("column is not isotropic unimodular")
        j = next(j for j in middle if not cur[j].is_zero())
        xi = (one - cur[1]).scale(ring.inv(cur[j].constant_value()))
        push(Transvection(1, j, xi))
    for j in middle:
        if not cur[j].is_zero():
            push(Transvection(j, 1, -cur[j]))
    if odd and not cur[0].is_zero():
        push(Transvection(-1, 0, cur[0]))
    if cur != OrthoVector.basis(ring, nv, r, odd, 1):
        raise InputError("column did not reduce to e_1; it is not isotropic unimodular")
    if len(word) > base_budget(r, odd):
        raise CertificateError("base word exceeds its budget")
    return word
