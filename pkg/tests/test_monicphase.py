import pytest

from conftest import F5, F7
from eoreduce.errors import InputError
from eoreduce.monicphase import (
    STEP_BUDGETS,
    make_monic,
    monic_budget,
    step_monic_lift,
    step_mu_mix,
    step_short_root_fix,
    step_unimodularize,
)
from eoreduce.orthocore import OrthoVector, Transvection, apply_word, quad_form
from eoreduce.pipeline import random_instance
from eoreduce.polyring import Poly, combine, is_lex_monic, parse_poly


def col(ring, n, r, odd, values):
    return OrthoVector.from_dict(ring, n, r, odd, {k: parse_poly(v, ring, n) if isinstance(v, str) else v
                                                   for k, v in values.items()})


def test_budgets():
    assert monic_budget(3, False) == 26 and monic_budget(3, True) == 28
    assert sum(STEP_BUDGETS[k](3) for k in ("S1", "S2", "S3", "S4", "S5")) == 26


def test_short_circuit_examples():
    b = apply_word([Transvection(-2, 1, parse_poly("1", F5, 1))], OrthoVector.basis(F5, 1, 3, False, 1))
    word, out, trace = make_monic(b)
    assert len(word) == 0 and out == b and not trace.steps
    x = parse_poly("x1", F5, 1)
    b = apply_word([Transvection(-2, 1, x)], OrthoVector.basis(F5, 1, 3, False, 1))
    assert b == col(F5, 1, 3, False, {1: 1, -2: "x1"})
    assert len(make_monic(b)[0]) == 0


def test_make_monic_rejects_bad_input():
    with pytest.raises(InputError):
        make_monic(col(F5, 1, 3, False, {1: "x1"}))
    with pytest.raises(InputError):
        make_monic(OrthoVector.basis(F5, 1, 2, False, 1))


@pytest.mark.parametrize("parity", ["even", "odd"])
def test_make_monic_random(parity):
    odd = parity == "odd"
    for seed in range(25):
        b = random_instance(F5, 1, 3, parity, 8, seed)
        word, out, trace = make_monic(b)
        assert apply_word(word, b) == out
        assert is_lex_monic(out[-2])
        assert len(word) <= monic_budget(3, odd)
        assert quad_form(out).is_zero()
        assert trace.replay()
        labels = [st.label for st in trace.steps]
        if labels:
            assert labels == (["S0"] if odd else []) + ["S1", "S2", "S3", "S4", "S5"]
        for st in trace.steps:
            assert len(st.fragment) <= STEP_BUDGETS[st.label](3)
            assert quad_form(st.snapshot).is_zero()


def test_make_monic_deterministic():
    b = random_instance(F7, 2, 4, "even", 5, 3)
    assert make_monic(b)[0] == make_monic(b)[0]


def test_step_unimodularize_examples():
    b = col(F5, 1, 3, False, {2: 1, -3: "x1", -2: 0, -1: 0})
    target = (2, 3, -3, -2, -1)
    frag, new, wit = step_unimodularize(b, target, 1, [2, 3])
    assert len(frag) == 0 and new == b
    assert is_lex_monic(combine(wit, [new[i] for i in target]))


def test_step_unimodularize_certifies_random():
    for seed in range(10):
        b = random_instance(F5, 1, 3, "even", 8, seed)
        target = (2, 3, -3, -2, -1)
        frag, new, wit = step_unimodularize(b, target, 1, [2, 3])
        assert apply_word(frag, b) == new
        assert is_lex_monic(combine(wit, [new[i] for i in target]))


def test_step_monic_lift_examples():
    b = col(F5, 1, 3, False, {1: "x1", -2: 0})
    frag, new = step_monic_lift(b, (1,), -2)
    assert new[-2] == parse_poly("x1", F5, 1) and len(frag) == 1
    b = col(F5, 1, 3, False, {1: "x1", -2: "3"})
    frag, new = step_monic_lift(b, (1,), -2)
    # 3 + x1 is already lex-monic for L = 0
    assert len(frag) == 1 and new[-2] == parse_poly("x1 + 3", F5, 1)
    b = col(F5, 1, 3, False, {1: "x1", -2: "2*x1^2"})
    frag, new = step_monic_lift(b, (1,), -2)
    # L = 0 and L = 1 leave a leading coefficient 2 or 3
    assert new[-2] == parse_poly("x1^3 + 2*x1^2", F5, 1)


def test_step_mu_mix_already_unimodular():
    b = col(F5, 1, 3, False, {1: 1})
    frag, new, wit = step_mu_mix(b)
    assert len(frag) == 0 and new == b


def test_step_short_root_fix():
    b = col(F5, 1, 3, True, {1: 1})
    frag, new, wit = step_short_root_fix(b)
    assert len(frag) == 0
    with pytest.raises(InputError):
        step_short_root_fix(col(F5, 1, 3, False, {1: 1}))
    for seed in range(10):
        b = random_instance(F5, 1, 3, "odd", 8, seed)
        frag, new, wit = step_short_root_fix(b)
        assert len(frag) <= 2
        gens = [new[i] for i in (1, 2, 3, -3, -2, -1)]
        assert is_lex_monic(combine(wit, gens))


@pytest.mark.parametrize("odd", [False, True])
def test_make_monic_sparse_columns_use_every_search(odd):
    """Over a field only all-zero targets force S1, S3, S4 to move."""
    moved = set()
    cols = [OrthoVector.basis(F5, 2, 3, odd, i) for i in (1, 2, 3, -3, -1)]
    cols.append(col(F5, 2, 3, odd, {-2: "2"}))
    for b in cols:
        word, out, trace = make_monic(b)
        assert apply_word(word, b) == out and is_lex_monic(out[-2]) and trace.replay()
        assert len(word) <= monic_budget(3, odd)
        moved |= {st.label for st in trace.steps if len(st.fragment)}
    assert {"S1", "S2", "S3", "S4", "S5"} <= moved
