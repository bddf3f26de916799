"""Make entry ``-2`` of an isotropic unimodular column lexicographically monic.

Each step works in the localization ``A[S^-1]`` at lex-monic polynomials.  A
row is unimodular there exactly when the ideal it generates in ``A``
contains a lex-monic polynomial, so every step is certified by such a witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CertificateError, InputError, SearchCapError
from .orthocore import (
    OrthoVector,
    Transvection,
    Word,
    apply_word,
    embed_gl_word,
    gl_word_antitranspose,
    is_isotropic_unimodular,
    mu_word,
)
from .polyring import Poly, combine, ideal_contains_lex_monic, is_lex_monic
from .search import DEFAULT_CAP, coefficient_vectors

STEP_BUDGETS = {"S0": lambda r: r - 1, "S1": lambda r: r - 1, "S2": lambda r: r - 1,
                "S3": lambda r: 7 * r - 3, "S4": lambda r: r - 1, "S5": lambda r: r - 1}


def monic_budget(r: int, odd: bool) -> int:
    return 12 * r - 8 if odd else 11 * r - 7


@dataclass
class MonicStep:
    label: str
    fragment: Word
    snapshot: OrthoVector
    target: tuple
    witness: list | None

    def to_json(self):
        return {"phase": self.label, "length": len(self.fragment),
                "budget": STEP_BUDGETS[self.label](self.snapshot.r), "target": list(self.target)}


@dataclass
class MonicPhaseTrace:
    start: OrthoVector
    steps: list = field(default_factory=list)

    @property
    def word(self) -> Word:
        out = Word()
        for st in self.steps:
            out = Word(st.fragment) + out
        return out

    def replay(self) -> bool:
        """Re-apply the fragments and compare every snapshot and certificate."""
        cur = self.start
        for st in self.steps:
            cur = apply_word(st.fragment, cur)
            if cur != st.snapshot or len(st.fragment) > STEP_BUDGETS[st.label](cur.r):
                return False
            if st.witness is not None:
                gens = [cur[i] for i in st.target]
                if not is_lex_monic(combine(st.witness, gens)):
                    return False
        return True


def _certify(b: OrthoVector, target):
    return ideal_contains_lex_monic([b[i] for i in target])


def _long_targets(r, skip=()):
    return tuple(i for i in list(range(1, r + 1)) + list(range(-r, 0)) if i not in skip)


def active_vars(b: OrthoVector) -> int:
    """Number of leading variables the column actually involves (at least one)."""
    used = [v for v in range(b.nvars) if any(e.involves(v) for e in b.entries)]
    return max(used) + 1 if used else 1


def step_unimodularize(b, target, pivot, movers, constraint=None, cap=DEFAULT_CAP, label="S1"):
    """Search ``T_{i,pivot}(c_i * constraint)``, ``i in movers``, until ``target`` certifies.

    Returns ``(fragment, new column, witness)``.
    """
    ring, nv = b.ring, b.nvars
    scale = Poly.const(ring, nv, 1) if constraint is None else constraint
    for coeffs in coefficient_vectors(len(movers), ring, nv, cap, active=active_vars(b)):
        frag = Word(Transvection(i, pivot, c * scale) for i, c in zip(movers, coeffs))
        new = apply_word(frag, b)
        witness = _certify(new, target)
        if witness is not None:
            return frag, new, witness
    raise SearchCapError(f"no certified coefficients within {cap} candidates", label)


def _lift_power(base: Poly, addition: Poly, cap: int, label: str) -> int:
    """Least ``L`` with ``base + x1^L * addition`` lex-monic."""
    x1 = Poly.var(base.ring, base.nvars, 0)
    for L in range(cap):
        if is_lex_monic(base + x1 ** L * addition):
            return L
    raise SearchCapError(f"no power of x1 below {cap} makes the entry lex-monic", label)


def step_monic_lift(b, sources, target_index, apply_to=None, cap=DEFAULT_CAP, label="S2"):
    """Add ``x1^L f_i b_i`` into ``target_index`` with ``sum f_i b_i`` lex-monic.

    ``apply_to`` restricts which sources receive a transvection (Step 2 uses
    only the positive ones; the rest are absorbed by the unchanged ideal).
    """
    f = _certify(b, sources)
    if f is None:
        raise SearchCapError("source ideal has no lex-monic element", label)
    used = [k for k, i in enumerate(sources) if apply_to is None or i in apply_to]
    g = combine(f, [b[i] for i in sources])
    L = _lift_power(b[target_index], g, cap, label)
    x1L = Poly.var(b.ring, b.nvars, 0) ** L
    frag = Word(Transvection(target_index, sources[k], x1L * f[k]) for k in used)
    new = apply_word(frag, b)
    if len(used) == len(sources) and not is_lex_monic(new[target_index]):
        raise CertificateError(f"[{label}] lifted entry is not lex-monic")
    return frag, new


def step_mu_mix(b, cap=DEFAULT_CAP, label="S3"):
    """Apply ``H(mu(u,s,v)^T~)`` to make ``(b_1, b_-r..b_-2)`` unimodular in ``A[S^-1]``."""
    r = b.r
    target = (1,) + tuple(range(-r, -1))
    witness = _certify(b, target)
    if witness is not None:
        return Word(), b, witness
    base = (1,) + tuple(range(-r, 0))
    f = _certify(b, base)
    if f is None:
        raise SearchCapError("row (b_1, b_-r..b_-1) is not unimodular in the localization", label)
    s = combine(f, [b[i] for i in base])
    alpha = f[0]
    u = [b[k] * alpha for k in range(r, 1, -1)]
    for v in coefficient_vectors(r - 1, b.ring, b.nvars, cap, active=active_vars(b)):
        if all(x.is_zero() for x in v):
            continue
        frag = embed_gl_word(gl_word_antitranspose(mu_word(u, s, v), r), r)
        new = apply_word(frag, b)
        witness = _certify(new, target)
        if witness is not None:
            return frag, new, witness
    raise SearchCapError(f"no mixing vector v within {cap} candidates", label)


def step_short_root_fix(b, cap=DEFAULT_CAP, label="S0"):
    """Odd parity: ``T_{i,0}(c_i)``, ``i = 2..r``, so the row without ``b_0`` certifies."""
    if not b.odd:
        raise InputError("short-root fix needs odd parity")
    return step_unimodularize(b, _long_targets(b.r), 0, list(range(2, b.r + 1)), cap=cap, label=label)


def make_monic(b: OrthoVector, cap: int = DEFAULT_CAP, check_input: bool = True):
    """Return ``(word, column, trace)`` with entry ``-2`` of the column lex-monic."""
    r = b.r
    if r < 3:
        raise InputError("make_monic needs r >= 3")
    if check_input and not is_isotropic_unimodular(b)[0]:
        raise InputError("column is not isotropic unimodular")
    trace = MonicPhaseTrace(start=b)
    if is_lex_monic(b[-2]):
        return Word(), b, trace
    cur = b

    def record(label, frag, new, target, witness):
        trace.steps.append(MonicStep(label, frag, new, tuple(target), witness))
        return new

    if b.odd:
        frag, new, wit = step_short_root_fix(cur, cap)
        cur = record("S0", frag, new, _long_targets(r), wit)

    t1 = _long_targets(r, skip=(1,))
    frag, new, wit = step_unimodularize(cur, t1, 1, list(range(2, r + 1)), cap=cap, label="S1")
    cur = record("S1", frag, new, t1, wit)

    t2 = (1,) + tuple(range(-r, 0))
    frag, new = step_monic_lift(cur, t1, 1, apply_to=set(range(2, r + 1)), cap=cap, label="S2")
    cur = record("S2", frag, new, t2, _require(new, t2, "S2"))

    frag, new, wit = step_mu_mix(cur, cap)
    cur = record("S3", frag, new, (1,) + tuple(range(-r, -1)), wit)

    t4 = (1,) + tuple(range(-r, -2))
    frag, new, wit = step_unimodularize(cur, t4, -2, list(t4), cap=cap, label="S4")
    cur = record("S4", frag, new, t4, wit)

    frag, new = step_monic_lift(cur, t4, -2, cap=cap, label="S5")
    cur = record("S5", frag, new, (-2,), [Poly.const(b.ring, b.nvars, 1)])

    word = trace.word
    for st in trace.steps:
        if len(st.fragment) > STEP_BUDGETS[st.label](r):
            raise CertificateError(f"[{st.label}] fragment exceeds its budget")
    if len(word) > monic_budget(r, b.odd) or not is_lex_monic(cur[-2]):
        raise CertificateError("make_monic postcondition failed")
    return word, cur, trace


def _require(b, target, label):
    w = _certify(b, target)
    if w is None:
        raise CertificateError(f"[{label}] target row does not certify")
    return w
