"""Reduce an orthogonal matrix to diag(1, beta, 1), then break its certificate.

Run: python demos/matrix_and_tampering.py
"""

import random

from eoreduce.orthocore import is_orthogonal
from eoreduce.pipeline import (
    TAMPER_KINDS,
    Certificate,
    certificate_ok,
    random_orthogonal,
    reduce_matrix,
    residual_block,
    tamper_certificate,
    verify_certificate,
)
from eoreduce.polyring import CoeffRing

F5 = CoeffRing.gf(5)
g = random_orthogonal(F5, 1, 3, "even", 50, seed=1)
cert = reduce_matrix(g)
beta = residual_block(cert.output)
print(f"length {cert.actual_length} of at most {cert.claimed_bound}")
print("beta is orthogonal of size", beta.size, ":", is_orthogonal(beta))

data = cert.to_json()
rnd = random.Random(0)
for kind in TAMPER_KINDS:
    report = verify_certificate(Certificate.from_json(tamper_certificate(data, kind, rnd)))
    failed = [k for k, ok in report.items() if not ok]
    print(f"{kind:>9} mutation -> accepted={certificate_ok(report)}, failing checks {failed}")
