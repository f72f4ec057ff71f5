"""Batch verification driver.

    almostalg run-suite {quillen,complexes,k0,algebra,tilting,tower,all} ...
    almostalg compute OP [--input FILE]   (JSON payload on stdin by default)

Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage or
input error.  Reports are deterministic for a fixed (config, seed);
timings are only recorded with --time.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .base_ring import RingConfig
from .linalg import PolyMatrix, snf
from .modules import PresentedModule
from .almost import firmify
from .complexes import PerfPlus
from .k0 import k0_class
from .suites import SUITE_NAMES, SuiteOptions, run_suite
from .tower import a_n_plus, tilt_basis_iso

USAGE_ERROR = 2
CHECK_FAILURE = 1


class UsageError(Exception):
    pass


def _build_config(args) -> RingConfig:
    p = args.p if args.p is not None else 2
    mode = args.mode or "perfect"
    if mode == "perfect":
        return RingConfig.perfect(p)
    if mode == "truncated":
        return RingConfig.truncated(p, args.truncation or 1)
    if mode == "mixed":
        return RingConfig.mixed(p, args.level or 1, args.truncation or 1)
    raise UsageError(f"unknown mode {mode!r}")


def _validate(args):
    if args.p is not None and args.p not in (2, 3, 5, 7, 11, 13):
        raise UsageError(f"--p must be a small prime, got {args.p}")
    if args.level is not None and not 0 <= args.level <= 6:
        raise UsageError("--level must be in [0, 6]")
    if args.depth is not None and not 1 <= args.depth <= 6:
        raise UsageError("--depth must be in [1, 6]")
    if args.working_level is not None and not 1 <= args.working_level <= 10:
        raise UsageError("--working-level must be in [1, 10]")
    if args.corpus_size is not None and args.corpus_size < 1:
        raise UsageError("--corpus-size must be positive")


# -- compute op registry ---------------------------------------------------

def _parse_entries(grid, p, modulus):
    """Matrix entries as coefficient lists or bare integers."""
    ent = []
    for row in grid:
        out = []
        for e in row:
            if isinstance(e, int):
                out.append([e % p] if e % p else [])
            elif isinstance(e, list):
                out.append([int(c) % p for c in e])
            else:
                raise UsageError(f"bad matrix entry {e!r}")
        ent.append(out)
    if not ent or any(len(r) != len(ent[0]) for r in ent):
        raise UsageError("matrix rows must have equal length")
    return PolyMatrix(len(ent), len(ent[0]), p, ent, modulus)


def _op_snf(payload, args):
    p = payload.get("p", args.p or 2)
    A = _parse_entries(payload["matrix"], p, payload.get("modulus"))
    res = snf(A)
    return {
        "U": res.U.entries,
        "D": res.D.entries,
        "W": res.W.entries,
        "invariant_factors": res.invariant_factors,
    }


def _module_from_payload(payload, args):
    cfg = _build_config(args)
    level = payload.get("level", args.level or 0)
    if "relations" in payload:
        rank = payload["rank"]
        rel = _parse_entries(payload["relations"], cfg.p,
                             None) if payload["relations"] else \
            PolyMatrix(rank, 0, cfg.p)
        from .modules import ring_modulus
        rel = rel.with_modulus(ring_modulus(cfg, level))
        return PresentedModule(cfg, level, rank, rel)
    exps = [Fraction(e) for e in payload.get("exponents", [])]
    from .exponents import PExp
    return PresentedModule.from_factors(
        cfg, level, [PExp.from_fraction(cfg.p, e) for e in exps],
        payload.get("free_rank", 0))


def _op_decompose(payload, args):
    M = _module_from_payload(payload, args)
    return {
        "free_rank": M.free_rank(),
        "torsion_exponents": [str(e.as_fraction())
                              for e in M.decompose_exponents()],
    }


def _op_firmify(payload, args):
    if payload == "V" or payload == {"module": "V"}:
        cfg = _build_config(args)
        M = PresentedModule.free(cfg, 0, 1)
    else:
        M = _module_from_payload(payload, args)
    T = firmify(M)
    return {"tag": T.tag, "name": T.name}


def _op_k0_class(payload, args):
    cfg = _build_config(args)
    mults = {int(d): (int(a), int(b))
             for d, (a, b) in payload["mults"].items()}

    def realize(j):
        from .complexes import ChainComplex
        terms = {d: PresentedModule.free(cfg, j, a + b)
                 for d, (a, b) in mults.items()}
        return ChainComplex(cfg, terms, {})

    E = PerfPlus(cfg, mults, realize, aperf=payload.get("aperf", False),
                 witness="cli input")
    return k0_class(E).to_json()


def _op_a_n_plus(payload, args):
    cfg = _build_config(args)
    if not cfg.is_char_p:
        raise UsageError("a_n_plus needs a char-p config")
    Q, diag, proj = a_n_plus(payload.get("rank", 1), payload["n"],
                             payload.get("stage", 3), cfg)
    return {
        "free_rank": Q.free_rank(),
        "torsion_exponents": [str(e.as_fraction())
                              for e in Q.decompose_exponents()],
    }


def _op_tilt_basis_iso(payload, args):
    p = payload.get("p", args.p or 2)
    table = tilt_basis_iso(p, payload["n"], payload.get("c", 1))
    return {str(k): list(v) for k, v in table.items()}


OPS = {
    "snf": _op_snf,
    "decompose": _op_decompose,
    "firmify": _op_firmify,
    "k0_class": _op_k0_class,
    "a_n_plus": _op_a_n_plus,
    "tilt_basis_iso": _op_tilt_basis_iso,
}


# -- entry point -----------------------------------------------------------

def _parser():
    ap = argparse.ArgumentParser(prog="almostalg", description=__doc__)
    sub = ap.add_subparsers(dest="command")

    def common(sp):
        sp.add_argument("--p", type=int, default=None)
        sp.add_argument("--mode", choices=("perfect", "truncated", "mixed"),
                        default=None)
        sp.add_argument("--level", type=int, default=None)
        sp.add_argument("--truncation", type=int, default=None)
        sp.add_argument("--depth", type=int, default=None)
        sp.add_argument("--working-level", type=int, default=None)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--report", type=str, default=None,
                        help="write the JSON report to this path")
        sp.add_argument("--corpus-size", type=int, default=None)
        sp.add_argument("--time", action="store_true",
                        help="record per-check wall time in the report")

    rs = sub.add_parser("run-suite", help="run a verification suite")
    rs.add_argument("suite", help="one of %s or 'all'" % (SUITE_NAMES,))
    common(rs)

    cp = sub.add_parser("compute", help="run a single operation")
    cp.add_argument("op", help="one of %s" % (tuple(OPS),))
    cp.add_argument("--input", type=str, default=None,
                    help="JSON payload file (default: stdin)")
    common(cp)
    return ap


def _run_suite_cmd(args) -> int:
    _validate(args)
    if args.suite != "all" and args.suite not in SUITE_NAMES:
        raise UsageError(f"unknown suite {args.suite!r}")
    opts = SuiteOptions(
        seed=args.seed,
        corpus_size=args.corpus_size or 30,
        working_level=args.working_level or 8,
        depth=args.depth or 4,
        timing=args.time,
        primes=(args.p,) if args.p is not None else (2, 3),
    )
    reports = run_suite(args.suite, opts)
    doc = [r.to_json() for r in reports]
    text = json.dumps(doc if args.suite == "all" else doc[0], indent=2,
                      sort_keys=True)
    print(text)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
    return 0 if all(r.ok for r in reports) else CHECK_FAILURE


def _compute_cmd(args) -> int:
    _validate(args)
    if args.op not in OPS:
        raise UsageError(f"unknown op {args.op!r}")
    raw = open(args.input).read() if args.input else sys.stdin.read()
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON input: {exc}")
    try:
        result = OPS[args.op](payload, args)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad payload for {args.op}: {exc}")
    doc = {"op": args.op, "seed": args.seed, "result": result}
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
    return 0


def main(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return USAGE_ERROR if exc.code else 0
    if args.command is None:
        ap.print_usage(sys.stderr)
        return USAGE_ERROR
    try:
        if args.command == "run-suite":
            return _run_suite_cmd(args)
        return _compute_cmd(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
