"""Sparse multivariate polynomials over an effective coefficient ring.

Monomials are exponent tuples; Python tuple comparison *is* the lexicographic
order with ``x1`` greatest, so ``max(terms)`` is the leading monomial.
"""

from __future__ import annotations

import re
from operator import add

from ..errors import InputError
from .coeffs import FP, CoeffRing


class Poly:
    __slots__ = ("ring", "nvars", "terms", "_hash")

    def __init__(self, ring: CoeffRing, nvars: int, terms=None):
        self.ring = ring
        self.nvars = nvars
        clean = {}
        if terms:
            for mon, c in terms.items():
                mon = tuple(mon)
                if len(mon) != nvars:
                    raise InputError(f"monomial {mon} has length != {nvars}")
                c = ring.coerce(c)
                if c != 0:
                    clean[mon] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, nvars, terms):
        # terms already canonical: no zero coefficients, reduced residues
        p = cls.__new__(cls)
        p.ring, p.nvars, p.terms, p._hash = ring, nvars, terms, None
        return p

    @classmethod
    def const(cls, ring, nvars, c=1):
        c = ring.coerce(c)
        return cls._raw(ring, nvars, {(0,) * nvars: c} if c != 0 else {})

    @classmethod
    def zero(cls, ring, nvars):
        return cls._raw(ring, nvars, {})

    @classmethod
    def var(cls, ring, nvars, index, power=1):
        """The monomial ``x_{index+1}^power`` (``index`` is 0-based)."""
        if not 0 <= index < nvars:
            raise InputError(f"variable index {index} out of range")
        mon = [0] * nvars
        mon[index] = power
        return cls._raw(ring, nvars, {tuple(mon): ring.coerce(1)})

    @classmethod
    def monomial(cls, ring, mon, c=1):
        return cls(ring, len(mon), {tuple(mon): c})

    # basic predicates --------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.is_constant():
            raise InputError(f"{self} is not constant")
        return self.terms.get((0,) * self.nvars, 0)

    def is_one(self):
        return self.is_constant() and self.constant_value() == 1

    def is_unit(self):
        return self.is_constant() and bool(self.terms) and self.ring.is_unit(self.constant_value())

    def _check(self, other):
        if not isinstance(other, Poly):
            return Poly.const(self.ring, self.nvars, other)
        if other.ring != self.ring or other.nvars != self.nvars:
            raise InputError(f"incompatible polynomials over {self.ring}/{self.nvars} and {other.ring}/{other.nvars}")
        return other

    # arithmetic --------------------------------------------------------
    def _norm(self, c):
        return c % self.ring.modulus if self.ring.kind == FP else c

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self.terms)
        for mon, c in other.terms.items():
            s = self._norm(terms.get(mon, 0) + c)
            if s:
                terms[mon] = s
            else:
                terms.pop(mon, None)
        return Poly._raw(self.ring, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, self.nvars, {m: self._norm(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c):
        c = self.ring.coerce(c)
        if c == 0:
            return Poly.zero(self.ring, self.nvars)
        return Poly._raw(self.ring, self.nvars, {m: self._norm(v * c) for m, v in self.terms.items()})

    def mul_term(self, mon, c):
        if c == 0:
            return Poly.zero(self.ring, self.nvars)
        out = {}
        for m, v in self.terms.items():
            w = self._norm(v * c)
            if w:
                out[tuple(map(add, m, mon))] = w
        return Poly._raw(self.ring, self.nvars, out)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._check(other)
        if len(self.terms) > len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        out = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(map(add, ma, mb))
                out[m] = get(m, 0) + ca * cb
        if self.ring.kind == FP:
            p = self.ring.modulus
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: c for m, c in out.items() if c}
        return Poly._raw(self.ring, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InputError("negative exponent")
        result = Poly.const(self.ring, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, int):
            return self == Poly.const(self.ring, self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.nvars, frozenset(self.terms.items())))
        return self._hash

    # lex structure -----------------------------------------------------
    def lm(self):
        if not self.terms:
            raise InputError("zero polynomial has no leading monomial")
        return max(self.terms)

    def lc(self):
        return self.terms[self.lm()]

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, var):
        return max((m[var] for m in self.terms), default=-1)

    def involves(self, var):
        return any(m[var] for m in self.terms)

    def coeffs_in(self, var):
        """Split into ``{exponent of x_var: coefficient polynomial free of x_var}``."""
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = m[var]
            parts.setdefault(e, {})[m[:var] + (0,) + m[var + 1:]] = c
        return {e: Poly._raw(self.ring, self.nvars, t) for e, t in parts.items()}

    def leading_coeff_in(self, var):
        if not self.terms:
            return Poly.zero(self.ring, self.nvars)
        return self.coeffs_in(var)[self.degree_in(var)]

    def is_monic_in(self, var):
        return bool(self.terms) and self.leading_coeff_in(var).is_one()

    def monic(self):
        """Scale by the inverse of the leading coefficient (fields, or lc = -1)."""
        return self.scale(self.ring.inv(self.lc()))

    # variable bookkeeping ---------------------------------------------
    def extend(self, extra: int):
        pad = (0,) * extra
        return Poly._raw(self.ring, self.nvars + extra, {m + pad: c for m, c in self.terms.items()})

    def truncate_vars(self, nvars: int):
        """Drop trailing variables, which must not occur."""
        out = {}
        for m, c in self.terms.items():
            if any(m[nvars:]):
                raise InputError(f"{self} involves a dropped variable")
            out[m[:nvars]] = c
        return Poly._raw(self.ring, nvars, out)

    def permute(self, perm):
        """Rename variable ``i`` to ``perm[i]``."""
        out = {}
        for m, c in self.terms.items():
            nm = [0] * self.nvars
            for i, e in enumerate(m):
                nm[perm[i]] = e
            out[tuple(nm)] = c
        return Poly._raw(self.ring, self.nvars, out)

    def substitute(self, images: dict):
        """Ring homomorphism sending ``x_i`` to ``images[i]`` (others fixed)."""
        if not images:
            return self
        keys = sorted(images)
        cache = {k: {0: Poly.const(self.ring, images[k].nvars, 1), 1: images[k]} for k in keys}

        def power(k, e):
            table = cache[k]
            if e not in table:
                table[e] = power(k, e // 2) * power(k, e - e // 2)
            return table[e]

        nv = images[keys[0]].nvars
        result = Poly.zero(self.ring, nv)
        for m, c in self.terms.items():
            rest = tuple(0 if i in images else e for i, e in enumerate(m))
            if nv != self.nvars:
                rest = rest + (0,) * (nv - self.nvars) if nv > self.nvars else rest[:nv]
            term = Poly._raw(self.ring, nv, {rest: c})
            for k in keys:
                if m[k]:
                    term = term * power(k, m[k])
            result = result + term
        return result

    # division ----------------------------------------------------------
    def divmod_lex(self, divisors):
        """Multivariate division in lex order; returns (quotients, remainder)."""
        quots = [Poly.zero(self.ring, self.nvars) for _ in divisors]
        lead = [(d.lm(), d.lc()) for d in divisors]
        rem = {}
        p = dict(self.terms)
        norm = self._norm
        while p:
            m = max(p)
            c = p[m]
            for k, (dm, dc) in enumerate(lead):
                if all(a >= b for a, b in zip(m, dm)):
                    q = self.ring.div_exact(c, dc)
                    if q is None:
                        continue
                    shift = tuple(a - b for a, b in zip(m, dm))
                    quots[k] = quots[k] + Poly._raw(self.ring, self.nvars, {shift: q})
                    for dmon, dcoef in divisors[k].terms.items():
                        t = tuple(map(add, dmon, shift))
                        v = norm(p.get(t, 0) - q * dcoef)
                        if v:
                            p[t] = v
                        else:
                            p.pop(t, None)
                    break
            else:
                rem[m] = c
                del p[m]
        return quots, Poly._raw(self.ring, self.nvars, rem)

    def div_exact(self, other):
        """``self / other`` when ``other`` divides ``self`` exactly, else ``None``."""
        other = self._check(other)
        if other.is_zero():
            return None
        if self.is_zero():
            return self
        (q,), r = self.divmod_lex([other])
        return q if r.is_zero() else None

    # text --------------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, {self.ring}, n={self.nvars})"


def format_poly(f: Poly) -> str:
    if not f.terms:
        return "0"
    pieces = []
    for m in sorted(f.terms, reverse=True):
        c = f.terms[m]
        if f.ring.kind == FP and c > f.ring.modulus // 2:
            c = c - f.ring.modulus
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        factors = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e]
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        pieces.append((sign, "*".join(factors)))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


_TERM = re.compile(r"([+-])?([^+-]+)")


def parse_poly(text: str, ring: CoeffRing, nvars: int) -> Poly:
    """Parse the sparse text format ``c*x1^a1*x2^a2 + ...``."""
    src = re.sub(r"\s+", "", text)
    if not src:
        raise InputError("empty polynomial text")
    # protect residue literals like 5:3 and fractions from the +/- splitter
    terms: dict = {}
    pos = 0
    for match in _TERM.finditer(src):
        if match.start() != pos:
            raise InputError(f"cannot parse polynomial {text!r}")
        pos = match.end()
        sign, body = match.groups()
        coeff = ring.coerce(-1 if sign == "-" else 1)
        mon = [0] * nvars
        for factor in body.split("*"):
            if not factor:
                raise InputError(f"empty factor in {text!r}")
            if factor[0] == "x":
                name, _, exp = factor.partition("^")
                try:
                    idx = int(name[1:]) - 1
                    e = int(exp) if exp else 1
                except ValueError:
                    raise InputError(f"bad variable {factor!r}") from None
                if not 0 <= idx < nvars or e < 0:
                    raise InputError(f"variable {name} outside x1..x{nvars}")
                mon[idx] += e
            else:
                try:
                    coeff = ring.coerce(coeff * ring.parse(factor))
                except (ValueError, ZeroDivisionError):
                    raise InputError(f"bad coefficient {factor!r}") from None
        mon = tuple(mon)
        terms[mon] = ring.coerce(terms.get(mon, 0) + coeff)
    if pos != len(src):
        raise InputError(f"cannot parse polynomial {text!r}")
    return Poly(ring, nvars, terms)
