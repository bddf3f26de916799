"""Quick property battery behind ``eoreduce selftest``."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor

from .orthocore import (
    OrthoVector,
    Transvection,
    Word,
    apply_word,
    gl_word_product,
    layout,
    mu,
    mu_word,
    quad_form,
    solve_theta,
    theta_apply,
    unipotent_embed,
    unipotent_word,
    word_product,
)
from .pipeline import (
    TAMPER_KINDS,
    Certificate,
    certificate_ok,
    random_instance,
    random_poly,
    reduce_column,
    tamper_certificate,
    verify_certificate,
)
from .polyring import CoeffRing, Poly


def _transvections(rnd, ring):
    r, odd = rnd.choice([3, 4]), rnd.random() < 0.5
    idx = layout(r, odd)
    while True:
        i, j = rnd.choice(idx), rnd.choice(idx)
        if i != 0 and i != j and i != -j and (j != 0 or odd):
            break
    a, c = random_poly(ring, 1, rnd), random_poly(ring, 1, rnd)
    b = random_instance(ring, 1, r, "odd" if odd else "even", 3, rnd.randrange(10**6))
    ta, tc = Transvection(i, j, a), Transvection(i, j, c)
    ok = apply_word(Word([ta, tc]), b) == apply_word(Word([Transvection(i, j, a + c)]), b)
    ok &= apply_word(Word([ta, ta.inverse()]), b) == b
    ok &= quad_form(apply_word(Word([ta]), b)).is_zero()
    if j != 0:
        ok &= apply_word(Word([ta]), b) == apply_word(Word([Transvection(-j, -i, -a)]), b)
    return ok


def random_unimodular(ring, nvars, r, rnd, length=4):
    """First column of a random product of elementary GL(r) transvections."""
    word = []
    while len(word) < length:
        i, j = rnd.randrange(1, r + 1), rnd.randrange(1, r + 1)
        if i != j:
            word.append((i, j, random_poly(ring, nvars, rnd)))
    g = gl_word_product(word, r, ring, nvars)
    return [row[0] for row in g]


def _mu(rnd, ring):
    r = rnd.choice([3, 4, 5])
    u = [random_poly(ring, 1, rnd) for _ in range(r - 1)]
    v = [random_poly(ring, 1, rnd) for _ in range(r - 1)]
    s = random_poly(ring, 1, rnd)
    w = mu_word(u, s, v)
    return gl_word_product(w, r, ring, 1) == mu(u, s, v) and len(w) <= 7 * r - 3


def _theta(rnd, ring):
    r = rnd.choice([3, 4, 5])
    zero = Poly.zero(ring, 1)
    M = [[zero] * r for _ in range(r)]
    for a in range(r):
        for b in range(r - 1 - a):
            M[a][b] = random_poly(ring, 1, rnd)
            M[r - 1 - b][r - 1 - a] = -M[a][b]
    w = unipotent_word(M)
    ok = word_product(w, r, False, ring, 1) == unipotent_embed(M) and len(w) <= r * (r - 1) // 2
    bplus = random_unimodular(ring, 1, r, rnd)
    rec = solve_theta(bplus, theta_apply(M, bplus))
    return ok and rec is not None and theta_apply(rec, bplus) == theta_apply(M, bplus)


def _reduce(payload):
    parity, seed = payload
    ring = CoeffRing.gf(5)
    cert = reduce_column(random_instance(ring, 1, 3, parity, 8, seed), seed=seed)
    return cert.to_json(), certificate_ok(verify_certificate(cert))


def run(seed: int = 0, jobs: int = 1, out=print) -> bool:
    rnd = random.Random(seed)
    ring = CoeffRing.gf(5)
    rows = []

    def battery(name, fn, count):
        t = time.perf_counter()
        fails = sum(not fn(rnd, ring) for _ in range(count))
        rows.append((name, count, fails, time.perf_counter() - t))

    battery("transvection algebra", _transvections, 100)
    battery("mu factorization", _mu, 30)
    battery("unipotent radical / theta", _theta, 30)

    t = time.perf_counter()
    payloads = [(p, seed + k) for p in ("even", "odd") for k in range(5)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_reduce, payloads))
    else:
        results = [_reduce(p) for p in payloads]
    rows.append(("column reduction F_5, r=3", len(results), sum(not ok for _, ok in results),
                 time.perf_counter() - t))

    t = time.perf_counter()
    tampered = 0
    fails = 0
    for data, _ in results:
        if not data["word"]:
            continue
        for kind in TAMPER_KINDS:
            bad = tamper_certificate(data, kind, rnd)
            tampered += 1
            fails += certificate_ok(verify_certificate(Certificate.from_json(bad)))
    rows.append(("tamper detection", tampered, fails, time.perf_counter() - t))

    out(f"{'check':<28}{'runs':>6}{'fails':>7}{'secs':>8}")
    for name, count, fails, secs in rows:
        out(f"{name:<28}{count:>6}{fails:>7}{secs:>8.2f}")
    return all(f == 0 for _, _, f, _ in rows)
