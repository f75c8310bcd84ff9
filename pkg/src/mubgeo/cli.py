"""Command-line front end: construct, verify, audit, geometry, all,
compare-derived, serve.

Exit codes: 0 all checks pass, 1 a verification or audit failure,
2 invalid parameters.  All randomness is seeded and recorded in the
artifacts, so identical configs produce byte-identical output.
"""

import argparse
import io
import json
import os
import sys
from pathlib import Path

from . import audit as audit_mod
from . import geometry as geometry_mod
from . import verify as verify_mod
from .constructions import MubFamily, build_family
from .errors import InvalidParameters, MubError

OUTPUT_DIR_ENV = "MUBGEO_OUTPUT_DIR"


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def write_artifact(text, output, default_name):
    if output == "-":
        sys.stdout.write(text)
        return "-"
    if output is None:
        output = Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / default_name
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return str(path)


def family_from_args(args, suffix=""):
    def get(name):
        return getattr(args, name + suffix, None)

    input_path = get("input")
    if input_path:
        with open(input_path) as fh:
            return MubFamily.from_json_dict(json.load(fh))
    construction = get("construction")
    if construction is None:
        raise InvalidParameters("--construction or --input is required")
    poly = get("planar_poly")
    if poly is not None:
        poly = [int(c) for c in poly.split(",")]
    return build_family(construction, p=get("p"), n=get("n"), s=get("s"),
                        planar_poly=poly)


def default_name(args, command):
    bits = [command]
    if getattr(args, "construction", None):
        bits.append(args.construction)
    for key in ("p", "n", "s"):
        val = getattr(args, key, None)
        if val is not None:
            bits.append(f"{key}{val}")
    return "_".join(bits) + (".csv" if getattr(args, "format", "json") == "csv"
                             else ".json")


def run_verify(family, args):
    return verify_mod.verify_family(family, mode=args.mode,
                                    samples=args.samples, seed=args.seed)


def geometry_payload(report):
    payload = {"census": report.census, "rank": report.rank}
    if report.m == 4:
        payload["phg_identity"] = geometry_mod.phg_count_identity(report.rank)
    elif report.rank % 2 == 0:
        payload["pg_identity"] = geometry_mod.pg_count_identity(
            report.m, report.rank // 2)
    return payload


def cmd_construct(args):
    family = family_from_args(args)
    if args.format == "csv":
        buf = io.StringIO()
        family.to_csv(buf)
        text = buf.getvalue()
    else:
        text = dumps(family.to_json_dict())
    dest = write_artifact(text, args.output, default_name(args, "construct"))
    print(f"construct: q={family.q} bases={family.num_bases} -> {dest}")
    return 0


def cmd_verify(args):
    family = family_from_args(args)
    report = run_verify(family, args)
    text = dumps(report.to_json_dict())
    dest = write_artifact(text, args.output, default_name(args, "verify"))
    print(f"verify: {'pass' if report.verdict else 'fail'} "
          f"({report.pairs_checked} pairs) -> {dest}")
    return 0 if report.verdict else 1


def cmd_audit(args):
    family = family_from_args(args)
    report = audit_mod.audit_family(family)
    text = dumps(report.to_json_dict())
    dest = write_artifact(text, args.output, default_name(args, "audit"))
    print(f"audit: {'pass' if report.passed else 'fail'} "
          f"rank={report.rank} |M|={report.vector_count} -> {dest}")
    return 0 if report.passed else 1


def cmd_geometry(args):
    family = family_from_args(args)
    report = audit_mod.audit_family(family)
    payload = geometry_payload(report)
    text = dumps(payload)
    dest = write_artifact(text, args.output, default_name(args, "geometry"))
    ok = payload["census"]["reconciliation_ok"]
    print(f"geometry: {'pass' if ok else 'fail'} "
          f"points={payload['census']['points']} -> {dest}")
    return 0 if ok else 1


def cmd_all(args):
    family = family_from_args(args)
    verify_report = run_verify(family, args)
    audit_report = audit_mod.audit_family(family)
    payload = {
        "family": family.to_json_dict(),
        "verify": verify_report.to_json_dict(),
        "audit": audit_report.to_json_dict(),
        "geometry": geometry_payload(audit_report),
    }
    text = dumps(payload)
    dest = write_artifact(text, args.output, default_name(args, "all"))
    ok = verify_report.verdict and audit_report.passed
    print(f"all: {'pass' if ok else 'fail'} q={family.q} "
          f"rank={audit_report.rank} -> {dest}")
    return 0 if ok else 1


def cmd_compare_derived(args):
    fam_a = family_from_args(args, suffix="_a")
    fam_b = family_from_args(args, suffix="_b")
    if fam_a.q != fam_b.q or fam_a.m != fam_b.m:
        raise InvalidParameters(
            f"dimension mismatch: q={fam_a.q}/{fam_b.q}, m={fam_a.m}/{fam_b.m}")
    set_a = {tuple(r) for r in audit_mod.derive_sets(fam_a).closure.tolist()}
    set_b = {tuple(r) for r in audit_mod.derive_sets(fam_b).closure.tolist()}
    only_a = sorted(set_a - set_b)
    only_b = sorted(set_b - set_a)
    if not only_a and not only_b:
        verdict = "equal"
    elif not only_b:
        verdict = "a-contains-b"
    elif not only_a:
        verdict = "b-contains-a"
    else:
        verdict = "incomparable"
    payload = {"verdict": verdict,
               "size_a": len(set_a), "size_b": len(set_b),
               "only_in_a": [list(v) for v in only_a[:10]],
               "only_in_b": [list(v) for v in only_b[:10]]}
    text = dumps(payload)
    dest = write_artifact(text, args.output, "compare_derived.json")
    print(f"compare-derived: {verdict} -> {dest}")
    return 0


def cmd_serve(args):
    import uvicorn

    from .service import app
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def add_family_args(parser, suffix=""):
    parser.add_argument("--construction" + suffix.replace("_", "-"),
                        dest="construction" + suffix,
                        choices=["planar", "alltop", "symplectic",
                                 "galois-ring"])
    parser.add_argument("--p" + suffix.replace("_", "-"),
                        dest="p" + suffix, type=int)
    parser.add_argument("--n" + suffix.replace("_", "-"),
                        dest="n" + suffix, type=int)
    parser.add_argument("--s" + suffix.replace("_", "-"),
                        dest="s" + suffix, type=int)
    parser.add_argument("--planar-poly" + suffix.replace("_", "-"),
                        dest="planar_poly" + suffix,
                        help="ascending coefficients, e.g. 0,0,1 for x^2")
    parser.add_argument("--input" + suffix.replace("_", "-"),
                        dest="input" + suffix,
                        help="load a family from an exported JSON artifact")


def add_verify_args(parser):
    parser.add_argument("--mode", choices=["full", "sampled"], default="full")
    parser.add_argument("--samples", type=int, default=200,
                        help="cross pairs per basis pair in sampled mode")
    parser.add_argument("--seed", type=int, default=0)


def add_output_args(parser, with_format=False):
    parser.add_argument("--output", "-o",
                        help="artifact path; '-' streams JSON to stdout")
    if with_format:
        parser.add_argument("--format", choices=["json", "csv"],
                            default="json")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mubgeo",
        description="Construct, verify, and audit complete MUB families")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a family and export it")
    add_family_args(p)
    add_output_args(p, with_format=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="exact unbiasedness verification")
    add_family_args(p)
    add_verify_args(p)
    add_output_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit", help="module-structure audit")
    add_family_args(p)
    add_output_args(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("geometry", help="projective point census")
    add_family_args(p)
    add_output_args(p)
    p.set_defaults(func=cmd_geometry)

    p = sub.add_parser("all", help="construct + verify + audit + geometry")
    add_family_args(p)
    add_verify_args(p)
    add_output_args(p)
    p.set_defaults(func=cmd_all)

    p = sub.add_parser("compare-derived",
                       help="compare derived exponent sets of two configs")
    add_family_args(p, suffix="_a")
    add_family_args(p, suffix="_b")
    add_output_args(p)
    p.set_defaults(func=cmd_compare_derived)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MubError as exc:
        sys.stderr.write(dumps(exc.as_dict()))
        return 2


if __name__ == "__main__":
    sys.exit(main())
