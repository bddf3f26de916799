"""Command line: ``python -m eoreduce {bound,gen,reduce,verify,selftest}``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .bounds import compute_bound
from .errors import InputError, ReductionError, SearchCapError, UnsupportedRingError
from .orthocore import OrthoMatrix, OrthoVector
from .pipeline import (
    Certificate,
    certificate_ok,
    random_instance,
    random_orthogonal,
    reduce_column,
    reduce_matrix,
    verify_certificate,
)
from .polyring import CoeffRing
from .search import DEFAULT_CAP

EXIT_OK, EXIT_VERIFY, EXIT_CAP, EXIT_INPUT = 0, 1, 2, 3


def _ring(args) -> CoeffRing:
    if args.ring == "Fp":
        if args.p is None:
            raise InputError("--ring Fp needs --p")
        return CoeffRing.gf(args.p)
    return CoeffRing.rationals() if args.ring == "QQ" else CoeffRing.integers()


def _common(p, instance=True):
    p.add_argument("--ring", choices=["Fp", "QQ", "ZZ"], default="Fp")
    p.add_argument("--p", type=int, default=5)
    p.add_argument("--nvars", type=int, default=1)
    p.add_argument("--rank", type=int, default=3)
    p.add_argument("--parity", choices=["even", "odd"], default="even")
    p.add_argument("--mode", choices=["column", "matrix"], default="column")
    if instance:
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--count", type=int, default=1, help="instances, seeds seed..seed+count-1")
        p.add_argument("--length", type=int, default=8, help="random word length")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eoreduce", description="Bounded reduction in split orthogonal groups")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="print the word-length bound N")
    _common(p, instance=False)
    p.add_argument("--dim", type=int, default=None, help="Krull dimension D of the coefficients")

    p = sub.add_parser("gen", help="write random instances")
    _common(p)
    p.add_argument("--out", default="-")

    p = sub.add_parser("reduce", help="reduce instances and write certificates")
    _common(p)
    p.add_argument("--in", dest="inp", default=None, help="instance file written by gen")
    p.add_argument("--out", default="-")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("verify", help="replay certificates")
    p.add_argument("--in", dest="inp", default="-")

    p = sub.add_parser("selftest", help="run a quick property battery")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    return ap


def _read_json(path):
    with (sys.stdin if path == "-" else open(path)) as fh:
        return json.load(fh)


def _write_json(path, data):
    text = json.dumps(data, indent=1)
    if path == "-":
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _instance_json(ring, nvars, r, parity, mode, obj, seed):
    ring_data = ring.to_json()
    ring_data["nvars"] = nvars
    return {"ring": ring_data, "r": r, "parity": parity, "mode": mode, "seed": seed, "input": obj.to_json()}


def _generate(ring, args, seed):
    if args.mode == "column":
        return random_instance(ring, args.nvars, args.rank, args.parity, args.length, seed)
    return random_orthogonal(ring, args.nvars, args.rank, args.parity, args.length, seed)


def _load_instance(data):
    ring = CoeffRing.from_json(data["ring"])
    nv, r, odd = int(data["ring"]["nvars"]), int(data["r"]), data["parity"] == "odd"
    kind = OrthoVector if data.get("mode", "column") == "column" else OrthoMatrix
    return kind.from_json(data["input"], ring, nv, r, odd), data.get("seed")


def _reduce_one(payload):
    data, cap = payload
    obj, seed = _load_instance(data)
    if isinstance(obj, OrthoVector):
        return reduce_column(obj, cap, seed).to_json()
    return reduce_matrix(obj, cap, seed).to_json()


def _cmd_bound(args):
    D = args.dim if args.dim is not None else _ring(args).declared_dim
    print(compute_bound(args.nvars, D, args.rank, args.parity, args.mode))
    return EXIT_OK


def _cmd_gen(args):
    ring = _ring(args)
    out = [_instance_json(ring, args.nvars, args.rank, args.parity, args.mode, _generate(ring, args, s), s)
           for s in range(args.seed, args.seed + args.count)]
    _write_json(args.out, out if len(out) != 1 else out[0])
    return EXIT_OK


def _cmd_reduce(args):
    if args.inp:
        data = _read_json(args.inp)
        items = data if isinstance(data, list) else [data]
    else:
        ring = _ring(args)
        items = [_instance_json(ring, args.nvars, args.rank, args.parity, args.mode, _generate(ring, args, s), s)
                 for s in range(args.seed, args.seed + args.count)]
    payloads = [(it, args.cap) for it in items]
    if args.jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            certs = list(pool.map(_reduce_one, payloads))
    else:
        certs = [_reduce_one(p) for p in payloads]
    for c in certs:
        print(f"seed={c['seed']} length={c['actual_length']} bound={c['claimed_bound']}", file=sys.stderr)
    _write_json(args.out, certs if len(certs) != 1 else certs[0])
    return EXIT_OK


def _cmd_verify(args):
    data = _read_json(args.inp)
    status = EXIT_OK
    for item in data if isinstance(data, list) else [data]:
        report = verify_certificate(Certificate.from_json(item))
        ok = certificate_ok(report)
        checks = " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in report.items())
        print(f"{'PASS' if ok else 'FAIL'} seed={item.get('seed')} {checks}")
        if not ok:
            status = EXIT_VERIFY
    return status


def _cmd_selftest(args):
    from . import selftest
    return EXIT_OK if selftest.run(seed=args.seed, jobs=args.jobs) else EXIT_VERIFY


COMMANDS = {"bound": _cmd_bound, "gen": _cmd_gen, "reduce": _cmd_reduce,
            "verify": _cmd_verify, "selftest": _cmd_selftest}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        code = COMMANDS[args.command](args)
    except SearchCapError as exc:
        print(f"search cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, UnsupportedRingError, json.JSONDecodeError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ReductionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    if args.command == "selftest":
        print(f"elapsed {time.perf_counter() - start:.1f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
