"""Reduce an isotropic unimodular column to e_1 and inspect each phase.

Run: python demos/column_reduction.py [seed]
"""

import sys

from eoreduce.monicphase import make_monic
from eoreduce.orthocore import OrthoVector, apply_word
from eoreduce.pipeline import certificate_ok, random_instance, reduce_column, verify_certificate
from eoreduce.polyring import CoeffRing

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 3
F5 = CoeffRing.gf(5)
b = random_instance(F5, 1, 3, "even", 8, seed)
print("input column:", b.to_json())

# the monic phase on its own
word, col, trace = make_monic(b)
for st in trace.steps:
    print(f"  {st.label}: {len(st.fragment)} transvections")
print("entry -2 after the monic phase:", col[-2])

cert = reduce_column(b, seed=seed)
for ph in cert.phases:
    print(f"{ph['phase']:>8}: length {ph['length']:>3} (budget {ph['budget']})")
print(f"total {cert.actual_length}, bound {cert.claimed_bound}")
print("reaches e_1:", apply_word(cert.word, b) == OrthoVector.basis(F5, 1, 3, False, 1))
print("verifier:", verify_certificate(cert), certificate_ok(verify_certificate(cert)))
