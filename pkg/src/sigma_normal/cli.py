"""Command-line front end: ``sigma-normal {check,classify,sweep,lemmas,oracle-compare}``.

Exit codes: 0 consistent, 1 input error, 2 internal inconsistency (the two
deciders disagree, or a property suite fails).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .catalog import acceptance_labels, catalog_labels, group_from_label, spec_from_sources
from .checker import check_exhaustive, check_pairwise
from .classifier import classify
from .errors import CapabilityError, ContractError, InputError
from .lemmas import run_suites
from .morphisms import InvolutionSpec, compatible_homomorphisms, enumerate_antiautomorphisms_order2
from .rings import make_ring
from .sweep import ORACLE_BOUND, WORKERS_ENV, run_sweep

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2
DEFAULT_RINGS = "Z2,Z3,Z4,Z5,F4"


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _rings(text: str) -> list[str]:
    labels = [r.strip() for r in text.split(",") if r.strip()]
    for r in labels:
        make_ring(r)
    return labels


def _scope_labels(args: argparse.Namespace) -> list[str]:
    if args.groups:
        labels = [g.strip() for g in args.groups.split(",") if g.strip()]
        for g in labels:
            group_from_label(g)
        return labels
    if args.acceptance:
        return acceptance_labels()
    return catalog_labels(args.max_order)


def _load_spec(args: argparse.Namespace) -> InvolutionSpec:
    G = group_from_label(args.group)
    K = make_ring(args.ring)
    spec = spec_from_sources(G, K, args.sigma, args.f)
    if not spec.compatible:
        g = spec.validation[1]
        raise InputError(f"x -> x^sigma is not an involution: f(g sigma(g)) != 1 at g = {g}")
    return spec


def cmd_check(args: argparse.Namespace) -> int:
    spec = _load_spec(args)
    verdict = check_pairwise(spec)
    cert = classify(spec)
    out: dict[str, Any] = {
        "group": args.group,
        "ring": args.ring,
        "sigma": list(spec.sigma.map),
        "f": list(spec.f.values),
        "normal": verdict.normal,
        "pairwise": verdict.to_json(),
        "case": cert.case,
        "agree": verdict.normal == cert.normal,
    }
    x = verdict.witness_element(spec)
    if x is not None:
        out["witness_element"] = x.to_json()
    consistent = out["agree"]
    if args.oracle:
        if spec.ring.size**spec.group.order <= ORACLE_BOUND:
            ov = check_exhaustive(spec, ORACLE_BOUND)
            out["oracle"] = ov.to_json()
            out["oracle_agree"] = ov.normal == verdict.normal
            consistent = consistent and out["oracle_agree"]
        else:
            out["oracle"] = None
            out["oracle_skipped"] = f"|K|^|G| > {ORACLE_BOUND}"
    _emit(dump_json(out), args.out)
    return EXIT_OK if consistent else EXIT_INCONSISTENT


def cmd_classify(args: argparse.Namespace) -> int:
    spec = _load_spec(args)
    cert = classify(spec)
    verdict = check_pairwise(spec)
    out = {
        "group": args.group,
        "ring": args.ring,
        "certificate": cert.to_json(),
        "pairwise_normal": verdict.normal,
        "agree": verdict.normal == cert.normal,
    }
    _emit(dump_json(out), args.out)
    return EXIT_OK if out["agree"] else EXIT_INCONSISTENT


CSV_FIELDS = (
    "group", "ring", "sigma_index", "f_index", "pairwise_normal",
    "witness_kind", "witness", "case", "agree", "oracle_normal",
)


def write_csv(records: list[dict], path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in records:
            oracle = r.get("oracle")
            w.writerow([
                r["group"], r["ring"], r["sigma_index"], r["f_index"],
                int(r["pairwise"]["normal"]), r["pairwise"]["witness_kind"] or "",
                json.dumps(r["pairwise"]["witness"]) if r["pairwise"]["witness"] is not None else "",
                r["case"], int(r["agree"]),
                "" if not oracle else int(oracle["normal"]),
            ])


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.max_order > 32:
        raise InputError("--max-order must be <= 32")
    report = run_sweep(_scope_labels(args), _rings(args.rings), oracle=args.oracle, workers=args.workers)
    _emit(dump_json(report.to_json()), args.out)
    if args.csv:
        write_csv(report.records, args.csv)
    if args.timing:
        Path(args.timing).write_text(dump_json(report.timing))
    s = report.summary()
    print(
        f"instances={s['instances']} normal={s['normal']} disagreements={s['disagreements']} "
        f"oracle_disagreements={s['oracle_disagreements']}",
        file=sys.stderr,
    )
    return EXIT_OK if report.consistent else EXIT_INCONSISTENT


def _scope_instances(args: argparse.Namespace):
    """``(group, ring, sigma index, f index, spec)`` for every compatible instance in scope."""
    for lab in _scope_labels(args):
        G = group_from_label(lab)
        for ring in _rings(args.rings):
            K = make_ring(ring)
            for si, sigma in enumerate(enumerate_antiautomorphisms_order2(G)):
                for fi, f in compatible_homomorphisms(sigma, K):
                    yield lab, ring, si, fi, InvolutionSpec(sigma, f)


def cmd_lemmas(args: argparse.Namespace) -> int:
    if args.group:
        spec = _load_spec(args)
        items = [(args.group, args.ring, None, None, spec)]
    else:
        items = (it for it in _scope_instances(args) if check_pairwise(it[4]).normal)
    records = []
    failed = 0
    for lab, ring, si, fi, spec in items:
        suites = run_suites(spec)
        ok = all(s.passed for s in suites)
        failed += not ok
        rec: dict[str, Any] = {"group": lab, "ring": ring, "passed": ok, "suites": [s.to_json() for s in suites]}
        if si is not None:
            rec["sigma_index"], rec["f_index"] = si, fi
        if args.group:
            rec["normal"] = check_pairwise(spec).normal
        records.append(rec)
    _emit(dump_json({"instances": len(records), "failed": failed, "records": records}), args.out)
    return EXIT_OK if not failed else EXIT_INCONSISTENT


def cmd_oracle_compare(args: argparse.Namespace) -> int:
    records = []
    skipped = 0
    for lab, ring, si, fi, spec in _scope_instances(args):
        if spec.ring.size**spec.group.order > args.bound:
            skipped += 1
            continue
        pv, ov = check_pairwise(spec), check_exhaustive(spec, args.bound)
        records.append({
            "group": lab, "ring": ring, "sigma_index": si, "f_index": fi,
            "pairwise": pv.normal, "exhaustive": ov.normal, "agree": pv.normal == ov.normal,
        })
    bad = sum(not r["agree"] for r in records)
    out = {"compared": len(records), "skipped": skipped, "disagreements": bad, "records": records}
    _emit(dump_json(out), args.out)
    return EXIT_OK if not bad else EXIT_INCONSISTENT


def _instance_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--group", required=required, help="group label, e.g. dihedral:4 or file:table.txt")
    p.add_argument("--ring", required=required, help="ring label: Z2..Z9, F4, F8, F9 (F5 = Z5)")
    p.add_argument("--sigma", default="builtin:classical", help="builtin:NAME, index:N, file:PATH or inline images")
    p.add_argument("--f", default="builtin:trivial", help="builtin:NAME, index:N, file:PATH or inline values")


def _scope_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-order", type=int, default=8, help="largest catalog group order")
    p.add_argument("--rings", default=DEFAULT_RINGS, help="comma-separated ring labels")
    p.add_argument("--groups", default="", help="comma-separated group labels (overrides --max-order)")
    p.add_argument("--acceptance", action="store_true", help="order <= 16 catalog plus the central products")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigma-normal",
        description="Decide sigma-normality of finite group rings and cross-check against a structural classifier.",
        epilog=f"Worker processes for sweep are capped by ${WORKERS_ENV}.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", help="decide one instance with both deciders")
    _instance_flags(p)
    p.add_argument("--oracle", action="store_true", help="also run the exhaustive checker")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="print the classification certificate")
    _instance_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", help="cross-validate over catalog groups and rings")
    _scope_flags(p)
    p.add_argument("--oracle", action="store_true", help=f"run the exhaustive checker when |K|^|G| <= {ORACLE_BOUND}")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", help="JSON report path (default stdout)")
    p.add_argument("--csv", help="also write a flat CSV")
    p.add_argument("--timing", help="write per-shard timing JSON here")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("lemmas", help="run the property suites on sigma-normal instances")
    _instance_flags(p, required=False)
    _scope_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("oracle-compare", help="pairwise versus exhaustive checker")
    _scope_flags(p)
    p.add_argument("--bound", type=int, default=ORACLE_BOUND, help="largest |K|^|G| to enumerate")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle_compare)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "group", None) and args.verb == "lemmas" and not args.ring:
        parser.error("lemmas --group also needs --ring")
    try:
        return args.func(args)
    except (InputError, CapabilityError, ContractError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
