"""Command-line front end: batch verification, decomposition runs and
machine-readable JSON reports.

Exit codes: 0 all checks passed, 1 check failure, 2 parse/usage error,
3 enumeration or oracle cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .algebra import (AlgebraContext, EnumerationCapExceeded,
                      group_algebra_subalgebra)
from .catalog import builtin_catalog, catalog_by_name
from .decompose import certify_indecomposable, recover_decomposition
from .groups import (OracleCapExceeded, abelian_invariants,
                     direct_factor_oracle, has_cyclic_factor_of_order,
                     subgroup_to_pgroup)
from .io import (SchemaError, dump_report, group_fingerprint, group_to_dict,
                 load_inputs)
from .lemmas import (VerificationError, cyclic_factor_test,
                     lemma_identity_check, verify_tensor_factorization)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CAP = 0, 1, 2, 3


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pgroupalg",
        description="Exact computations in modular group algebras of finite p-groups")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--p", type=int, default=None, choices=(2, 3, 5))
        sp.add_argument("--input", action="append", default=[],
                        help="group JSON file (repeatable)")
        sp.add_argument("--catalog", action="append", default=[],
                        help="built-in group name (repeatable)")
        sp.add_argument("--max-order", type=int, default=32)
        sp.add_argument("--oracle-cap", type=int, default=64)
        sp.add_argument("--enum-cap", type=int, default=2 ** 22)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None, help="report output path")
        sp.add_argument("--workers", type=int, default=1)

    sp = sub.add_parser("catalog", help="list built-in groups or emit fixtures")
    common(sp)
    sp.add_argument("--emit", default=None, metavar="NAME",
                    help="write the named group as JSON")
    sp.add_argument("--emit-factorization", nargs=2, default=None,
                    metavar=("A", "G0"),
                    help="emit A x G0 with the coordinate factorization")
    for name in ("lemmas", "cyclic-factor", "certify", "oracle", "recover"):
        sp = sub.add_parser(name)
        common(sp)
    return ap


def _selected_groups(args):
    groups = []
    for path in args.input:
        G, B, C = load_inputs(path)
        groups.append((G, B, C))
    for name in args.catalog:
        groups.append((catalog_by_name(name), None, None))
    if not args.input and not args.catalog:
        for G in builtin_catalog(p=args.p, max_order=args.max_order):
            groups.append((G, None, None))
    elif args.p is not None:
        groups = [t for t in groups if t[0].p == args.p]
    groups = [t for t in groups if t[0].order <= args.max_order]
    return groups


def _map_ordered(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def _write_fixture(args, data: dict) -> None:
    """Emitted fixtures are plain group files, not report envelopes, so
    they can be fed straight back through --input."""
    text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_catalog(args) -> tuple[int, dict]:
    if args.emit_factorization:
        a_name, g0_name = args.emit_factorization
        A = catalog_by_name(a_name)
        G0 = catalog_by_name(g0_name)
        from .groups import catalog_build
        G = catalog_build("direct_product", A, G0)
        ctx = AlgebraContext(G)
        B = group_algebra_subalgebra(
            ctx, [a * G0.order for a in range(A.order)])
        C = group_algebra_subalgebra(ctx, list(range(G0.order)))
        _write_fixture(args, group_to_dict(G, B.space, C.space))
        return EXIT_OK, None
    if args.emit:
        _write_fixture(args, group_to_dict(catalog_by_name(args.emit)))
        return EXIT_OK, None
    entries = [group_fingerprint(G)
               for G in builtin_catalog(p=args.p, max_order=args.max_order)]
    return EXIT_OK, {"catalog": entries}


def cmd_lemmas(args) -> tuple[int, dict]:
    groups = _selected_groups(args)

    def check(item):
        G, _, _ = item
        smax = round(math.log(G.exponent(), G.p)) or 1
        reports = []
        ok = True
        for i in range(1, smax + 1):
            reports.append(lemma_identity_check(G, 1, i).to_json())
            reports.append(lemma_identity_check(G, 2, i).to_json())
            for j in range(1, smax + 1):
                reports.append(lemma_identity_check(G, 3, i, j).to_json())
        ok = all(r["equal"] for r in reports)
        return {"group": group_fingerprint(G), "reports": reports, "pass": ok}

    results = _map_ordered(check, groups, args.workers)
    code = EXIT_OK if all(r["pass"] for r in results) else EXIT_FAIL
    return code, {"lemmas": results}


def cmd_cyclic_factor(args) -> tuple[int, dict]:
    groups = _selected_groups(args)

    def check(item):
        G, _, _ = item
        smax = round(math.log(G.exponent(), G.p)) or 1
        rows = []
        ok = True
        for i in range(1, smax + 1):
            has, exponent = cyclic_factor_test(G, i)
            oracle = has_cyclic_factor_of_order(G, G.p ** i,
                                                cap=args.oracle_cap)
            agree = has == oracle
            ok = ok and agree
            rows.append({"i": i, "criterion": has, "oracle": oracle,
                         "exponent": int(exponent), "agree": agree})
        return {"group": group_fingerprint(G), "tests": rows, "pass": ok}

    results = _map_ordered(check, groups, args.workers)
    code = EXIT_OK if all(r["pass"] for r in results) else EXIT_FAIL
    return code, {"cyclic_factor": results}


def cmd_certify(args) -> tuple[int, dict]:
    groups = _selected_groups(args)

    def check(item):
        G, _, _ = item
        cert = certify_indecomposable(G, oracle_cap=args.oracle_cap)
        return {"group": group_fingerprint(G), "certificate": cert.to_json()}

    results = _map_ordered(check, groups, args.workers)
    return EXIT_OK, {"certify": results}


def cmd_oracle(args) -> tuple[int, dict]:
    groups = _selected_groups(args)

    def check(item):
        G, _, _ = item
        pairs = direct_factor_oracle(G, cap=args.oracle_cap)
        dumped = []
        for H, K in pairs:
            Hp, _ = subgroup_to_pgroup(H)
            Kp, _ = subgroup_to_pgroup(K)
            dumped.append({
                "H": [int(x) for x in H.elements],
                "K": [int(x) for x in K.elements],
                "H_invariants": [int(x) for x in abelian_invariants(Hp)]
                if Hp.is_abelian() else None,
                "K_invariants": [int(x) for x in abelian_invariants(Kp)]
                if Kp.is_abelian() else None,
            })
        return {"group": group_fingerprint(G),
                "decomposable": bool(pairs), "pairs": dumped}

    results = _map_ordered(check, groups, args.workers)
    return EXIT_OK, {"oracle": results}


def cmd_recover(args) -> tuple[int, dict]:
    results = []
    ok = True
    for path in args.input:
        G, B, C = load_inputs(path)
        if B is None or C is None:
            raise SchemaError(f"{path}: no factorization block")
        ctx = B.ctx
        try:
            fact = verify_tensor_factorization(ctx, B, C)
            report = recover_decomposition(fact, seed=args.seed)
            results.append({"group": group_fingerprint(G),
                            "recovered": report.to_json(), "pass": True})
        except VerificationError as exc:
            ok = False
            results.append({"group": group_fingerprint(G),
                            "error": str(exc), "pass": False})
    return (EXIT_OK if ok else EXIT_FAIL), {"recover": results}


COMMANDS = {
    "catalog": cmd_catalog,
    "lemmas": cmd_lemmas,
    "cyclic-factor": cmd_cyclic_factor,
    "certify": cmd_certify,
    "oracle": cmd_oracle,
    "recover": cmd_recover,
}


def run(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    t0 = time.monotonic()
    try:
        code, body = COMMANDS[args.command](args)
    except (SchemaError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (EnumerationCapExceeded, OracleCapExceeded) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except VerificationError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    elapsed = time.monotonic() - t0
    if body is None:
        return code
    body = {"format": 1, "tool": {"name": "pgroupalg", "version": __version__},
            "command": args.command,
            "config": {
                "p": args.p, "max_order": args.max_order,
                "oracle_cap": args.oracle_cap, "enum_cap": args.enum_cap,
                "seed": args.seed,
                "inputs": list(args.input), "catalog": list(args.catalog),
            },
            **body}
    text = dump_report(body, {"seconds": round(elapsed, 3)})
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
