import random
import sys

import pytest
import sympy
from hypothesis import settings

from eoreduce.polyring import CoeffRing, Poly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

F3, F5, F7 = CoeffRing.gf(3), CoeffRing.gf(5), CoeffRing.gf(7)
QQ, ZZ = CoeffRing.rationals(), CoeffRing.integers()


def symbols(n):
    return sympy.symbols(" ".join(f"x{i + 1}" for i in range(n)) + " _pad")[:n]


def to_sympy(f: Poly):
    xs = symbols(f.nvars)
    expr = 0
    for mon, c in f.terms.items():
        term = sympy.Rational(c) if f.ring.kind == "QQ" else sympy.Integer(int(c))
        for x, e in zip(xs, mon):
            term *= x ** e
        expr += term
    return expr


def sympy_poly(f: Poly):
    xs = symbols(f.nvars)
    if f.ring.kind == "Fp":
        return sympy.Poly(to_sympy(f), *xs, modulus=f.ring.modulus)
    return sympy.Poly(to_sympy(f), *xs, domain="QQ" if f.ring.kind == "QQ" else "ZZ")


def same(f: Poly, g) -> bool:
    """Compare with a sympy Poly over the same ring."""
    return (sympy_poly(f) - g).is_zero


def rand_poly(ring, nvars, rnd, degree=2, terms=3):
    out = Poly.zero(ring, nvars)
    for _ in range(terms):
        mon = tuple(rnd.randint(0, degree) for _ in range(nvars))
        c = rnd.randrange(ring.modulus) if ring.kind == "Fp" else rnd.randint(-4, 4)
        out = out + Poly.monomial(ring, mon, c)
    return out


@pytest.fixture
def rnd():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    verdicts = sys.modules.get("test_acceptance")
    if verdicts is None or not verdicts.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(verdicts.VERDICTS):
        terminalreporter.write_line(verdicts.VERDICTS[number])
