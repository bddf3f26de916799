"""Full reductions, certificates and random instances."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from .bounds import compute_bound
from .elimphase import base_budget, base_reduce, kill_variable, round_budget
from .errors import CertificateError, InputError, ReductionError, UnsupportedRingError
from .monicphase import make_monic, monic_budget
from .orthocore import (
    OrthoMatrix,
    OrthoVector,
    Transvection,
    Word,
    apply_word,
    apply_word_matrix,
    is_isotropic_unimodular,
    is_orthogonal,
    layout,
    position,
    quad_form,
)
from .polyring import CoeffRing, Poly, normalize_variables
from .search import DEFAULT_CAP

FORMAT_VERSION = 1
log = logging.getLogger(__name__)


@dataclass
class Certificate:
    ring: CoeffRing
    nvars: int
    r: int
    parity: str
    mode: str
    input: object
    word: Word
    output: object
    claimed_bound: int
    phases: list = field(default_factory=list)
    seed: int | None = None
    trace: dict = field(default_factory=dict)

    @property
    def actual_length(self) -> int:
        return len(self.word)

    @property
    def odd(self) -> bool:
        return self.parity == "odd"

    def to_json(self) -> dict:
        ring = self.ring.to_json()
        ring["nvars"] = self.nvars
        return {
            "version": FORMAT_VERSION,
            "ring": ring,
            "r": self.r,
            "parity": self.parity,
            "mode": self.mode,
            "input": self.input.to_json(),
            "word": self.word.to_json(),
            "output": self.output.to_json(),
            "claimed_bound": self.claimed_bound,
            "actual_length": self.actual_length,
            "phases": self.phases,
            "seed": self.seed,
            "trace": self.trace,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        try:
            if data["version"] != FORMAT_VERSION:
                raise InputError(f"unsupported certificate version {data['version']}")
            ring = CoeffRing.from_json(data["ring"])
            nv, r, parity, mode = int(data["ring"]["nvars"]), int(data["r"]), data["parity"], data["mode"]
            odd = parity == "odd"
            kind = OrthoVector if mode == "column" else OrthoMatrix
            cert = cls(ring, nv, r, parity, mode,
                       kind.from_json(data["input"], ring, nv, r, odd),
                       Word.from_json(data["word"], ring, nv),
                       kind.from_json(data["output"], ring, nv, r, odd),
                       int(data["claimed_bound"]), list(data.get("phases", [])),
                       data.get("seed"), dict(data.get("trace", {})))
            cert.trace["declared_length"] = int(data.get("actual_length", len(cert.word)))
            return cert
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed certificate: {exc!r}") from None


def _parity(odd: bool) -> str:
    return "odd" if odd else "even"


def _check_rank(ring, r):
    if r < max(3, ring.declared_dim + 2):
        raise InputError(f"r = {r} is below max(3, D + 2)")


def _reduce_column_word(b: OrthoVector, cap: int):
    """Word taking ``b`` to ``e_1`` plus a per-phase breakdown."""
    ring, n, r, odd = b.ring, b.nvars, b.r, b.odd
    if not ring.is_field:
        raise UnsupportedRingError("column reduction is implemented over coefficient fields")
    changes = []
    pieces = []  # (word in current coordinates, number of changes in force)
    phases = []
    rounds_log = []
    cur = b
    for k in range(n, 0, -1):
        yv = k - 1
        if not any(e.involves(yv) for e in cur.entries):
            continue
        log.debug("monic phase for x%d", k)
        w, cur, trace = make_monic(cur, cap, check_input=False)
        pieces.append((w, len(changes)))
        phases.append({"phase": f"monic:x{k}", "length": len(w), "budget": monic_budget(r, odd),
                       "steps": [st.to_json() for st in trace.steps]})
        change, _ = normalize_variables(cur[-2], k, smallest=True)
        changes.append(change)
        cur = cur.map(change.forward)
        log.debug("eliminating x%d after %s; degrees %s", k, change,
                  [e.degree_in(yv) for e in cur.entries])
        w, cur, rounds = kill_variable(cur, yv, cap)
        pieces.append((w, len(changes)))
        phases.append({"phase": f"kill:x{k}", "length": len(w),
                       "budget": max(len(rounds), 1) * round_budget(r, odd),
                       "change": change.to_json(), "rounds": [rd.to_json() for rd in rounds]})
        rounds_log.extend(rounds)
    w = base_reduce(cur)
    pieces.append((w, len(changes)))
    phases.append({"phase": "base", "length": len(w), "budget": base_budget(r, odd)})

    word = Word()
    for w, depth in pieces:
        def back(e, depth=depth):
            for ch in reversed(changes[:depth]):
                e = ch.backward(e)
            return e
        word = w.map(back) + word
    return word, phases


def reduce_column(b: OrthoVector, cap: int = DEFAULT_CAP, seed: int | None = None) -> Certificate:
    """Certificate for a word taking the isotropic unimodular ``b`` to ``e_1``."""
    _check_rank(b.ring, b.r)
    if not is_isotropic_unimodular(b)[0]:
        raise InputError("column is not isotropic unimodular")
    word, phases = _reduce_column_word(b, cap)
    e1 = OrthoVector.basis(b.ring, b.nvars, b.r, b.odd, 1)
    if apply_word(word, b) != e1:
        raise CertificateError("assembled word does not reach e_1")
    bound = compute_bound(b.nvars, b.ring.declared_dim, b.r, _parity(b.odd), "column")
    cert = Certificate(b.ring, b.nvars, b.r, _parity(b.odd), "column", b, word, e1, bound, phases, seed)
    if len(word) > bound:
        raise CertificateError(f"word length {len(word)} exceeds the bound {bound}")
    return cert


def _clear_last_column(g: OrthoMatrix) -> Word:
    r, odd = g.r, g.odd
    col = g.column(-1)
    if not col[-1].is_one():
        raise CertificateError("entry (-1,-1) is not 1 after the column reduction")
    frags = [Transvection(j, -1, -col[j]) for j in list(range(2, r + 1)) + list(range(-r, -1))]
    if odd:
        frags.append(Transvection(1, 0, col[0]))
    return Word(reversed(frags))


def residual_block(g: OrthoMatrix) -> OrthoMatrix:
    """The middle block of a matrix of shape ``diag(1, beta, 1)``, as rank ``r - 1``."""
    r, odd = g.r, g.odd
    idx = [j for j in layout(r, odd) if j not in (1, -1)]
    rows = tuple(tuple(g[i, j] for j in idx) for i in idx)
    return OrthoMatrix(r - 1, odd, rows)


def has_block_shape(g: OrthoMatrix) -> bool:
    for j in layout(g.r, g.odd):
        for i in (1, -1):
            want = 1 if i == j else 0
            if g[i, j] != want or g[j, i] != want:
                return False
    return True


def reduce_matrix(g: OrthoMatrix, cap: int = DEFAULT_CAP, seed: int | None = None) -> Certificate:
    _check_rank(g.ring, g.r)
    if not is_orthogonal(g):
        raise InputError("matrix is not orthogonal")
    first = g.column(1)
    if not is_isotropic_unimodular(first)[0]:
        raise InputError("first column is not isotropic unimodular")
    w1, phases = _reduce_column_word(first, cap)
    h = apply_word_matrix(w1, g)
    w2 = _clear_last_column(h)
    out = apply_word_matrix(w2, h)
    if not has_block_shape(out) or not is_orthogonal(residual_block(out)):
        raise CertificateError("residual matrix does not have the block shape")
    phases.append({"phase": "clear", "length": len(w2), "budget": 2 * g.r - 2 + g.odd})
    word = w2 + w1
    bound = compute_bound(g.nvars, g.ring.declared_dim, g.r, _parity(g.odd), "matrix")
    if len(word) > bound:
        raise CertificateError(f"word length {len(word)} exceeds the bound {bound}")
    return Certificate(g.ring, g.nvars, g.r, _parity(g.odd), "matrix", g, word, out, bound, phases, seed)


# random instances --------------------------------------------------------------

def _random_coeff(ring, rnd):
    if ring.kind == "Fp":
        return rnd.randrange(ring.modulus)
    return rnd.randint(-3, 3)


def random_poly(ring, nvars, rnd, max_degree=1, terms=2):
    out = Poly.zero(ring, nvars)
    for _ in range(terms):
        mon = tuple(rnd.randint(0, max_degree) for _ in range(nvars))
        out = out + Poly.monomial(ring, mon, _random_coeff(ring, rnd))
    return out


def random_word(ring, nvars, r, odd, length, seed, max_degree=1) -> Word:
    rnd = random.Random(seed)
    idx = layout(r, odd)
    return Word(_random_transvection(ring, nvars, idx, odd, rnd, max_degree) for _ in range(length))


def _random_transvection(ring, nvars, idx, odd, rnd, max_degree):
    while True:
        i, j = rnd.choice(idx), rnd.choice(idx)
        if i == 0 or i == j or i == -j or (j == 0 and not odd):
            continue
        xi = random_poly(ring, nvars, rnd, max_degree)
        if not xi.is_zero():
            return Transvection(i, j, xi)


def random_instance(ring, nvars, r, parity="even", length=8, seed=0, max_degree=1) -> OrthoVector:
    """``product(w) * e_1`` for a random word ``w`` of ``length`` factors, each of which moves the column.

    Always isotropic unimodular; deterministic in ``seed``.
    """
    odd = parity == "odd"
    rnd = random.Random(seed)
    idx = layout(r, odd)
    b = OrthoVector.basis(ring, nvars, r, odd, 1)
    for _ in range(length):
        while True:
            new = apply_word(Word([_random_transvection(ring, nvars, idx, odd, rnd, max_degree)]), b)
            if new != b:
                b = new
                break
    return b


def random_orthogonal(ring, nvars, r, parity="even", length=8, seed=0, max_degree=1) -> OrthoMatrix:
    odd = parity == "odd"
    w = random_word(ring, nvars, r, odd, length, seed, max_degree)
    return apply_word_matrix(w, OrthoMatrix.identity(ring, nvars, r, odd))


# verification ---------------------------------------------------------------------

def verify_certificate(cert: Certificate) -> dict:
    """Independent replay; returns ``{check name: bool}`` and never raises on mismatch."""
    report = {}
    r, odd = cert.r, cert.odd
    try:
        for t in cert.word:
            t.check_shape(r, odd)
        report["indices"] = True
    except ReductionError:
        report["indices"] = False
        report["replay"] = False
    if report["indices"]:
        if cert.mode == "column":
            cur = cert.input
            q0 = quad_form(cur)
            ok = q0.is_zero()
            for t in reversed(tuple(cert.word)):
                cur = apply_word(Word([t]), cur)
                ok = ok and quad_form(cur) == q0
            report["isotropy"] = ok
            report["replay"] = cur == cert.output
            report["target"] = cert.output == OrthoVector.basis(cert.ring, cert.nvars, r, odd, 1)
        else:
            cur = cert.input
            ok = is_orthogonal(cur)
            for t in reversed(tuple(cert.word)):
                cur = apply_word_matrix(Word([t]), cur)
            report["orthogonality"] = ok and is_orthogonal(cur)
            report["replay"] = cur == cert.output
            report["target"] = has_block_shape(cert.output) and is_orthogonal(residual_block(cert.output))
    try:
        bound = compute_bound(cert.nvars, cert.ring.declared_dim, r, cert.parity, cert.mode)
        report["bound_formula"] = bound == cert.claimed_bound
    except ReductionError:
        report["bound_formula"] = False
    report["length"] = len(cert.word) <= cert.claimed_bound and \
        cert.trace.get("declared_length", len(cert.word)) == len(cert.word)
    return report


def certificate_ok(report: dict) -> bool:
    return all(report.values())


__all__ = [
    "Certificate", "FORMAT_VERSION", "certificate_ok", "compute_bound", "has_block_shape",
    "random_instance", "random_orthogonal", "random_poly", "random_word", "reduce_column",
    "reduce_matrix", "residual_block", "verify_certificate", "position",
]


# tampering (for testing the verifier) ------------------------------------------------

TAMPER_KINDS = ("parameter", "index", "bound")


def tamper_certificate(data: dict, kind: str, rnd: random.Random) -> dict:
    """Copy of a certificate JSON with one mutation that makes it invalid.

    Word mutations are only accepted when the changed factor moves the
    intermediate column differently, so the final replay must disagree.
    """
    import copy

    out = copy.deepcopy(data)
    if kind == "bound":
        out["claimed_bound"] = rnd.choice([data["actual_length"] - 1, data["claimed_bound"] - 1,
                                           data["claimed_bound"] + 1 + rnd.randrange(5)])
        return out
    cert = Certificate.from_json(data)
    if not cert.word:
        raise InputError("cannot mutate an empty word")
    r, odd = cert.r, cert.odd
    idx = layout(r, odd)
    # intermediate columns (matrix mode: first column suffices only if it moves, so use all columns)
    states = [cert.input]
    factors = list(reversed(tuple(cert.word)))
    step = apply_word if cert.mode == "column" else apply_word_matrix
    for t in factors:
        states.append(step(Word([t]), states[-1]))
    for _ in range(1000):
        k = rnd.randrange(len(factors))
        t = factors[k]
        if kind == "parameter":
            new = Transvection(t.i, t.j, t.xi + rnd.choice([1, -1, 2]))
        else:
            i, j = rnd.choice(idx), rnd.choice(idx)
            if i == 0 or i == j or i == -j or (j == 0 and not odd) or (i, j) == (t.i, t.j):
                continue
            new = Transvection(i, j, t.xi)
        if new.xi.is_zero() or step(Word([new]), states[k]) == states[k + 1]:
            continue
        pos = len(factors) - 1 - k
        out["word"][pos] = new.to_json()
        return out
    raise InputError("no invalidating mutation found")
