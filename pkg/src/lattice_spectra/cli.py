"""Batch command line front end: load, compute, verify, report, export.

Commands: ``show``, ``spec``, ``verify``, ``hom``.  Output is plain text by
default and byte-deterministic for fixed inputs; ``--format structured``
emits JSON lines.  Exit codes: 0 ok, 1 verification failure, 2 input error.
The environment variable LATTICE_SPECTRA_JOBS caps verification parallelism.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bitsets import bits
from .catalog import (
    GeneratorConfig,
    catalog,
    enumerate_lattices,
    parse_hom,
    parse_lattice,
    to_dot,
)
from .errors import LatticeToolError
from .lattices import all_filters, all_ideals, is_distributive, prime_ideals
from .spectra import build_bitop_spectrum, build_classical_spectrum
from .duality import classify_hom, delta_natural_iso_check, spec_b_on_hom
from .suites import CheckResult, corpus_checks, run_lattice_suites


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit_results(results: list[CheckResult], fmt: str, out) -> int:
    failures = 0
    for r in results:
        if not r.passed:
            failures += 1
        if fmt == "structured":
            out.write(
                json.dumps(
                    {
                        "lattice": r.lattice,
                        "check": r.check,
                        "status": "PASS" if r.passed else "FAIL",
                        "witness": r.witness or None,
                    },
                    sort_keys=True,
                )
                + "\n"
            )
        else:
            line = f"{'PASS' if r.passed else 'FAIL'} {r.lattice} {r.check}"
            if not r.passed and r.witness:
                line += f" witness={r.witness}"
            out.write(line + "\n")
    return failures


def cmd_show(args, out) -> int:
    lat = parse_lattice(_read(args.file))
    out.write(f"lattice {lat.name} ({lat.n} elements)\n")
    out.write("elements: " + " ".join(lat.names) + "\n")
    out.write(
        "covers: " + " ".join(f"{lat.names[a]}<{lat.names[b]}" for a, b in lat.covers) + "\n"
    )
    out.write(f"bottom: {lat.names[lat.bottom]}   top: {lat.names[lat.top]}\n")
    ideals = all_ideals(lat)
    filters = all_filters(lat)
    out.write(f"ideals ({len(ideals)}): " + " ".join(i.label() for i in ideals) + "\n")
    out.write(f"filters ({len(filters)}): " + " ".join(f.label() for f in filters) + "\n")
    primes = prime_ideals(lat)
    if primes:
        out.write(
            f"prime ideals: {len(primes)} " + " ".join(p.label() for p in primes) + "\n"
        )
    else:
        out.write("prime ideals: 0\n")
    rep = is_distributive(lat)
    if rep.distributive:
        out.write("distributive: yes\n")
    else:
        x, y, z = rep.triple
        copy = rep.sublattice
        out.write(
            f"distributive: no (triple {lat.names[x]},{lat.names[y]},{lat.names[z]}; "
            f"{copy.kind} copy {lat.set_label(sum(1 << e for e in copy.elements))})\n"
        )
    return 0


def cmd_spec(args, out) -> int:
    lat = parse_lattice(_read(args.file))
    if args.classical:
        spec = build_classical_spectrum(lat)
        out.write(f"classical spectrum of {lat.name}\n")
        out.write(f"points: {len(spec.points)}\n")
        for p in spec.points:
            out.write(f"  {p.label()}\n")
        out.write("d:\n")
        for x in range(lat.n):
            names = [spec.points[k].label() for k in bits(spec.dmap[x])]
            out.write(f"  {lat.names[x]} -> {{{','.join(names)}}}\n")
        out.write(f"zariski opens: {len(spec.space.opens)}\n")
        out.write(
            f"image intersection-closed: {'yes' if spec.image_intersection_closed else 'no'}\n"
        )
        if args.dot:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(to_dot(spec))
    else:
        spec = build_bitop_spectrum(lat)
        out.write(f"bitopological spectrum of {lat.name}\n")
        out.write(f"points: {len(spec.points)}\n")
        for p in spec.points:
            out.write(f"  {p.label()}\n")
        for title, table in (("delta", spec.delta), ("epsilon", spec.epsilon)):
            out.write(f"{title}:\n")
            for x in range(lat.n):
                names = [spec.points[k].label() for k in bits(table[x])]
                out.write(f"  {lat.names[x]} -> {{{','.join(names)}}}\n")
        out.write(f"tau opens: {len(spec.space.tau.opens)}\n")
        out.write(f"sigma opens: {len(spec.space.sigma.opens)}\n")
        same = spec.space.tau.opens == spec.space.sigma.opens
        out.write(f"tau == sigma: {'yes' if same else 'no'}\n")
        if args.dot:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(to_dot(spec))
    return 0


def cmd_verify(args, out) -> int:
    run_corpus = False
    if args.catalog:
        lattices = list(catalog().values())
        run_corpus = True
    elif args.exhaustive is not None:
        lattices = list(enumerate_lattices(GeneratorConfig("exhaustive", args.exhaustive)))
    elif args.random is not None:
        seed, count = args.random
        lattices = list(
            enumerate_lattices(GeneratorConfig("random", 7, seed=seed, count=count))
        )
    elif args.file:
        lattices = [parse_lattice(_read(args.file))]
    else:
        raise LatticeToolError("nothing to verify: pass a file, --catalog, --exhaustive or --random")
    results = run_lattice_suites(lattices, jobs=args.jobs)
    if run_corpus:
        results += corpus_checks()
    failures = _emit_results(results, args.format, out)
    summary = {
        "lattices": len(lattices),
        "checks": len(results),
        "failures": failures,
    }
    if args.format == "structured":
        out.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")
    else:
        out.write(
            f"lattices: {summary['lattices']}  checks: {summary['checks']}  "
            f"failures: {summary['failures']}\n"
        )
    return 1 if failures else 0


def cmd_hom(args, out) -> int:
    source = parse_lattice(_read(args.source))
    target = parse_lattice(_read(args.target))
    hom = parse_hom(_read(args.homfile), source, target)
    out.write(f"hom {source.name} -> {target.name}: {hom.label()}\n")
    cls = classify_hom(hom)
    if cls.proper:
        note = " (vacuous: target spectrum empty)" if cls.vacuously_proper else ""
        out.write(f"proper: yes{note}\n")
    else:
        out.write(f"proper: no witness={cls.proper_witness}\n")
    if cls.quasi_proper:
        out.write("quasi-proper: yes\n")
        morphism = spec_b_on_hom(hom)
        out.write(
            f"spectrum map: {len(morphism.source.up_tau)} points -> "
            f"{len(morphism.target.up_tau)} points\n"
        )
        out.write("pbd-morphism conditions: PASS\n")
        nat = delta_natural_iso_check(hom)
        if nat.passed:
            out.write("naturality square: PASS\n")
        else:
            out.write(f"naturality square: FAIL witness={nat.failing_element}\n")
            return 1
    else:
        out.write(f"quasi-proper: no witness={cls.quasi_witness}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattice-spectra",
        description="Finite lattice duality toolkit: spectra, reconstruction, theorem verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_show = sub.add_parser("show", help="print a lattice and its basic structure")
    p_show.add_argument("file")

    p_spec = sub.add_parser("spec", help="compute a spectrum")
    p_spec.add_argument("file")
    group = p_spec.add_mutually_exclusive_group()
    group.add_argument("--classical", action="store_true", help="prime-ideal spectrum")
    group.add_argument("--bitop", action="store_true", help="bitopological spectrum (default)")
    p_spec.add_argument("--dot", metavar="OUT", help="write a DOT rendering to OUT")

    p_verify = sub.add_parser("verify", help="run the theorem suites")
    p_verify.add_argument("file", nargs="?", help="lattice file to verify")
    p_verify.add_argument("--catalog", action="store_true", help="verify the named catalog")
    p_verify.add_argument(
        "--exhaustive", type=int, metavar="N", help="verify all lattices with at most N elements"
    )
    p_verify.add_argument(
        "--random", nargs=2, type=int, metavar=("SEED", "COUNT"), help="verify seeded random lattices"
    )
    p_verify.add_argument("--jobs", type=int, default=None, help="parallel verification jobs")
    p_verify.add_argument(
        "--format", choices=("text", "structured"), default="text", help="report format"
    )

    p_hom = sub.add_parser("hom", help="classify a homomorphism and its spectrum map")
    p_hom.add_argument("homfile")
    p_hom.add_argument("source")
    p_hom.add_argument("target")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "show": cmd_show,
        "spec": cmd_spec,
        "verify": cmd_verify,
        "hom": cmd_hom,
    }
    try:
        return handlers[args.command](args, out)
    except LatticeToolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
