import random

import pytest

from conftest import F3, F5, F7, QQ, ZZ
from eoreduce.elimphase import (
    add_to_y,
    avoids,
    base_budget,
    base_reduce,
    choose_max_ideals,
    kill_variable,
    prepare_add,
    prepare_budget,
    round_budget,
    shift_budget,
    unimodular_mod,
)
from eoreduce.errors import InputError, UnsupportedRingError
from eoreduce.monicphase import make_monic
from eoreduce.orthocore import OrthoVector, apply_word, is_isotropic_unimodular, quad_form
from eoreduce.pipeline import random_instance
from eoreduce.polyring import Poly, combine, normalize_variables, parse_poly, shift_last_variable


def monic_column(ring, n, r, parity, seed, length=8):
    b = random_instance(ring, n, r, parity, length, seed)
    _, b, _ = make_monic(b)
    change, _ = normalize_variables(b[-2], n, smallest=True)
    return b.map(change.forward)


def test_budgets():
    assert prepare_budget(3, False) == 3 and prepare_budget(3, True) == 4
    assert shift_budget(3, False) == 23 and shift_budget(3, True) == 25
    assert round_budget(3, True) == 29
    assert base_budget(3, False) == 16 and base_budget(3, True) == 19


def test_choose_max_ideals_examples():
    assert choose_max_ideals(F5, 1, 0) == []
    primes = choose_max_ideals(ZZ, 1, 0, [Poly.const(ZZ, 1, 6)])
    assert primes == [Poly.const(ZZ, 1, 2), Poly.const(ZZ, 1, 3)]
    t = parse_poly("x1", F3, 2)
    got = choose_max_ideals(F3, 2, 1, [parse_poly("x1^2 + x1", F3, 2)])
    assert sorted(map(str, got)) == sorted(["x1", "x1 + 1"])
    assert choose_max_ideals(F3, 2, 1) == [t]
    with pytest.raises(UnsupportedRingError):
        choose_max_ideals(F3, 3, 2)


def test_avoids_and_unimodular_mod():
    t = parse_poly("x1", F5, 2)
    assert avoids(parse_poly("x1 + 1", F5, 2), [t])
    assert not avoids(parse_poly("x1^2 + x1", F5, 2), [t])
    assert avoids(Poly.const(F5, 2, 3), [])
    row = [parse_poly("x1 - 1", F5, 2), parse_poly("x1*x2", F5, 2)]
    assert unimodular_mod(row, []) is None
    cof = unimodular_mod(row, [t])
    assert combine(cof, row + [t]).is_one()


@pytest.mark.parametrize("parity", ["even", "odd"])
def test_prepare_add_over_field(parity):
    odd = parity == "odd"
    for seed in range(15):
        b = monic_column(F5, 1, 3, parity, seed)
        if not any(e.involves(0) for e in b.entries):
            continue
        res = prepare_add(b, 0, [])
        assert len(res.word) <= prepare_budget(3, odd)
        assert apply_word(res.word, b) == res.column
        assert res.column[1].is_monic_in(0) and res.column[-2] == b[-2]
        row = [res.column[i] for i in range(1, 3)]
        assert combine(res.cofactors, row) == res.s and res.s.is_unit()
        assert not res.resultant.involves(0) and not res.resultant.is_zero()


def test_prepare_add_with_ideals_rank4():
    b = monic_column(F7, 2, 4, "even", 1, length=4)
    ideals = choose_max_ideals(F7, 2, 1)
    res = prepare_add(b, 1, ideals)
    assert len(res.word) <= prepare_budget(4, False)
    row = [res.column[i] for i in range(1, 4)]
    assert combine(res.cofactors, row) == res.s
    assert not res.s.involves(1) and avoids(res.s, ideals) and avoids(res.resultant, ideals)
    assert unimodular_mod(row, ideals) is not None


@pytest.mark.parametrize("parity", ["even", "odd"])
def test_add_to_y_identity(parity):
    odd = parity == "odd"
    for seed in range(6):
        b = monic_column(F5, 1, 3, parity, seed)
        if not any(e.involves(0) for e in b.entries):
            continue
        res = prepare_add(b, 0, [])
        ext = res.column.map(lambda e: e.extend(1))
        s = res.s.extend(1)
        word, m = add_to_y(ext, 0, 1, s, [c.extend(1) for c in res.cofactors])
        shifted = ext.map(lambda e: shift_last_variable(e, s, m, 0, 1))
        assert apply_word(word, ext) == shifted
        assert len(word) <= shift_budget(3, odd)
        # z = 0 gives back the identity action on b(y)
        zero = {1: Poly.zero(F5, 2)}
        assert apply_word(word.substitute(zero), ext) == ext


def test_add_to_y_non_unit_s():
    x, y, z = (Poly.var(F5, 3, k) for k in range(3))
    one = Poly.const(F5, 3, 1)
    s = x + 1
    # b = (s, 0, 1 | -1... ) chosen isotropic: q = b1 b-1 + b2 b-2 + b3 b-3
    b = OrthoVector.from_dict(F5, 3, 3, False, {1: s, 2: y, 3: one, -3: -(s * y), -2: Poly.zero(F5, 3), -1: y})
    assert quad_form(b).is_zero()
    cof = [one, Poly.zero(F5, 3)]
    word, m = add_to_y(b, 1, 2, s, cof)
    assert apply_word(word, b) == b.map(lambda e: shift_last_variable(e, s, m, 1, 2))


def test_add_to_y_rejects_bad_cofactors():
    b = monic_column(F5, 1, 3, "even", 0).map(lambda e: e.extend(1))
    with pytest.raises(InputError):
        add_to_y(b, 0, 1, Poly.const(F5, 2, 1), [Poly.zero(F5, 2)] * 2)


@pytest.mark.parametrize("parity", ["even", "odd"])
def test_kill_variable_over_field(parity):
    odd = parity == "odd"
    for seed in range(15):
        b = monic_column(F5, 1, 3, parity, seed)
        word, out, rounds = kill_variable(b, 0)
        assert apply_word(word, b) == out
        assert all(e.is_constant() for e in out.entries)
        assert len(word) <= max(len(rounds), 1) * round_budget(3, odd)
        assert is_isotropic_unimodular(out)[0]


def test_kill_variable_constant_column():
    e1 = OrthoVector.basis(F5, 1, 3, False, 1)
    word, out, rounds = kill_variable(e1, 0)
    assert len(word) == 0 and out == e1 and rounds == []


def test_kill_variable_two_variables():
    b = monic_column(F7, 2, 4, "even", 2, length=4)
    word, out, rounds = kill_variable(b, 1)
    assert apply_word(word, b) == out
    assert not any(e.involves(1) for e in out.entries)
    assert len(rounds) <= 2
    for rd in rounds:
        assert avoids(rd.s, rd.ideals)


def test_base_reduce_examples():
    e1 = OrthoVector.basis(F5, 1, 3, False, 1)
    assert len(base_reduce(e1)) == 0
    assert base_budget(3, False) == 16
    with pytest.raises(UnsupportedRingError):
        base_reduce(OrthoVector.basis(ZZ, 1, 3, False, 1))
    with pytest.raises(InputError):
        base_reduce(OrthoVector.from_dict(F5, 1, 3, False, {1: 1, -1: 1}))
    w = base_reduce(OrthoVector.from_dict(F5, 1, 3, False, {1: 2}))
    assert len(w) == 3 and apply_word(w, OrthoVector.from_dict(F5, 1, 3, False, {1: 2})) == e1


def test_base_reduce_random_orbit():
    rnd = random.Random(500)
    for k in range(500):
        r, odd = rnd.choice([3, 4]), bool(k % 2)
        b = random_instance(F7, 1, r, "odd" if odd else "even", rnd.randint(0, 8), k, max_degree=0)
        w = base_reduce(b)
        assert len(w) <= base_budget(r, odd)
        assert apply_word(w, b) == OrthoVector.basis(F7, 1, r, odd, 1)
        cur = b
        for t in reversed(w):
            cur = apply_word([t], cur)
            assert quad_form(cur).is_zero()
