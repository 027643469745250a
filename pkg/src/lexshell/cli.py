"""``lexshell`` command line: every subcommand prints a JSON report.

Exit status: 0 when the verdict is true (or the command simply succeeded),
1 when it is false, 2 on usage, input or internal errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path as FsPath

from .algebra import MonomialOrder
from .category import augment_category, poset_to_category
from .complexes import DEFAULT_FACET_BOUND, find_shelling, nerve, order_complex
from .errors import LexShellError, TheoremViolation
from .groebner import (
    initial_ideal_oracle,
    is_groebner_basis,
    is_quadratic,
    minimal_generators,
    parallel_basis,
)
from .io import basis_document, digest, dumps_instance, parse_basis, parse_instance, serialize_instance
from .lab import SweepConfig, equivalence_sweep, lex_order_is_shelling, verify_backward, verify_forward
from .labellings import check_lex_condition, check_prefix_condition, check_sbs_condition
from .poset import Poset, augment, bounded

log = logging.getLogger(__name__)


class UsageError(LexShellError):
    """Bad combination of arguments or a missing labelling."""


def _load(path: str):
    try:
        text = FsPath(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_instance(text)


def _need_labels(lab):
    if lab is None:
        raise UsageError("this command needs a labelled instance")
    return lab


def _render_witness(inst, witness):
    if witness is None:
        return None
    out = []
    for part in witness:
        if hasattr(part, "edges"):
            out.append(inst.render(part))
        elif isinstance(part, tuple):
            out.append(list(part))
        else:
            out.append(part)
    return out


def _verdict(inst, v) -> tuple:
    return (0 if v.ok else 1), {"verdict": v.ok, "witness": _render_witness(inst, v.witness)}


def _complex_of(inst):
    return order_complex(inst) if isinstance(inst, Poset) else nerve(inst)


def _complex_doc(k) -> dict:
    return {
        "dimension": k.dimension,
        "face_counts": list(k.face_counts()),
        "facets": [list(k.faces[d][i]) for d, i in k.facets],
    }


# -- subcommands --------------------------------------------------------------------


def cmd_validate(args):
    inst, lab = _load(args.file)
    doc = {"kind": "poset" if isinstance(inst, Poset) else "category", "labelled": lab is not None}
    if isinstance(inst, Poset):
        doc.update(elements=len(inst.elements), covers=len(inst.covers), bounded=inst.is_bounded)
    else:
        doc.update(
            objects=len(inst.objects),
            generators=len(inst.generators),
            morphisms=[m.id for m in inst.morphisms],
            augmented=inst.is_augmented,
        )
    return 0, doc


def cmd_chains(args):
    inst, lab = _load(args.file)
    scopes = {}
    for scope, chains in inst.scopes.items():
        key = "..".join(map(str, scope)) if isinstance(inst, Poset) else scope
        if lab is not None:
            chains = sorted(chains, key=lab.sequence)
        scopes[key] = [
            {"chain": inst.render(c), **({"labels": list(lab.sequence(c))} if lab is not None else {})}
            for c in chains
        ]
    return 0, {"scopes": scopes}


def cmd_complex(args):
    inst, _ = _load(args.file)
    if not isinstance(inst, Poset):
        raise UsageError("complex expects a poset; use nerve for categories")
    return 0, _complex_doc(order_complex(inst))


def cmd_nerve(args):
    inst, _ = _load(args.file)
    if isinstance(inst, Poset):
        inst = poset_to_category(inst)
    return 0, _complex_doc(nerve(inst))


def cmd_shelling(args):
    inst, lab = _load(args.file)
    k = _complex_of(inst)
    if args.search:
        found = find_shelling(k, bound=args.bound)
        doc = {"verdict": found is not None}
        if found is not None:
            doc["shelling"] = [list(k.faces[d][i]) for d, i in found]
        return (0 if found is not None else 1), doc
    order = MonomialOrder(inst, _need_labels(lab))
    ok = lex_order_is_shelling(inst, order, bound=max(args.bound, len(order.shelling)))
    return (0 if ok else 1), {"verdict": ok, "ordering": [inst.render(c) for c in order.shelling]}


def cmd_prefix(args):
    inst, lab = _load(args.file)
    return _verdict(inst, check_prefix_condition(inst, _need_labels(lab)))


def cmd_lex(args):
    inst, lab = _load(args.file)
    return _verdict(inst, check_lex_condition(inst, _need_labels(lab)))


def cmd_sbs(args):
    inst, lab = _load(args.file)
    return _verdict(inst, check_sbs_condition(inst, _need_labels(lab)))


_RULES = {0: "equal", 1: "degree", 2: "label sequence", 3: "carrier", 4: "domain"}


def cmd_order(args):
    inst, lab = _load(args.file)
    order = MonomialOrder(inst, _need_labels(lab))
    if args.explain:
        w, v = (inst.parse_path(t) for t in args.explain)
        sign, rule = order.explain(w, v)
        rel = {1: ">", -1: "<", 0: "="}[sign]
        return 0, {
            "comparison": f"{inst.render(w)} {rel} {inst.render(v)}",
            "sign": sign,
            "rule": rule,
            "rule_name": _RULES[rule],
            "carriers": [inst.render(order.carrier(w)), inst.render(order.carrier(v))],
        }
    return 0, {
        "shelling": [inst.render(c) for c in order.shelling],
        "monomials_descending": [inst.render(m) for m in reversed(order.monomials)],
    }


def cmd_gb(args):
    inst, lab = _load(args.file)
    order = MonomialOrder(inst, _need_labels(lab))
    G = parallel_basis(inst, order)
    doc = {"basis": basis_document(inst, G)}
    if not args.verify_paper_basis:
        return 0, doc
    try:
        text = FsPath(args.verify_paper_basis).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.verify_paper_basis}: {exc.strerror}") from None
    given = parse_basis(text, inst)
    ok = is_groebner_basis(given, inst, order, reference=G)
    doc["verified"] = {
        "elements": [g.render(order) for g in given],
        "is_groebner_basis": ok,
        "without_each": [
            is_groebner_basis(given[:i] + given[i + 1:], inst, order, reference=G)
            for i in range(len(given))
        ],
    }
    return (0 if ok else 1), doc


def cmd_oracle(args):
    inst, lab = _load(args.file)
    order = MonomialOrder(inst, _need_labels(lab))
    G = parallel_basis(inst, order)
    oracle = initial_ideal_oracle(inst, order)
    mins = minimal_generators(inst, oracle)
    ok = mins == frozenset(G.initial_terms)
    return (0 if ok else 1), {
        "verdict": ok,
        "initial_ideal": sorted(inst.render(m) for m in oracle),
        "minimal_generators": sorted(inst.render(m) for m in mins),
        "basis_initial_terms": sorted(inst.render(m) for m in G.initial_terms),
    }


def cmd_quadratic(args):
    inst, lab = _load(args.file)
    G = parallel_basis(inst, MonomialOrder(inst, _need_labels(lab)))
    ok = is_quadratic(G)
    return (0 if ok else 1), {"verdict": ok, "initial_terms": [inst.render(m) for m in G.initial_terms]}


def cmd_verify(args):
    inst, lab = _load(args.file)
    lab = _need_labels(lab)
    doc, code = {}, 0
    runs = {"fwd": [("forward", verify_forward)], "bwd": [("backward", verify_backward)]}
    runs["both"] = runs["fwd"] + runs["bwd"]
    for name, fn in runs[args.direction]:
        try:
            doc[name] = fn(inst, lab, dump_dir=args.dump_dir)
        except TheoremViolation as exc:
            code = 1
            doc[name] = {"violation": str(exc), "dump": exc.dump}
    return code, doc


def cmd_sweep(args):
    jobs = 1 if args.deterministic else args.jobs
    cfg = SweepConfig(
        max_elements=args.max_elements,
        max_label=args.max_label,
        count=args.count,
        seed=args.seed,
        exhaustive_max=args.exhaustive_max,
        kind=args.kind,
        jobs=jobs,
        keep_records=args.verbose,
        dump_dir=args.dump_dir,
    )
    summary = equivalence_sweep(cfg)
    bad = sum(summary["discrepancies"].values()) + sum(summary["theorem_violations"].values())
    summary["verdict"] = bad == 0
    return (0 if bad == 0 else 1), summary


def cmd_augment(args):
    inst, lab = _load(args.file)
    if isinstance(inst, Poset):
        out = augment(inst) if args.force else bounded(inst)
    else:
        out = augment_category(inst, force=args.force)
    doc = serialize_instance(out)
    if args.output:
        FsPath(args.output).write_text(dumps_instance(out) + "\n")
    return 0, {"instance": doc, "changed": out is not inst}


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lexshell", description=__doc__.splitlines()[0])
    parser.add_argument("--timing", action="store_true", help="include elapsed seconds in the report")
    parser.add_argument("--log-level", default="WARNING")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, file=True):
        p = sub.add_parser(name, help=help_)
        if file:
            p.add_argument("file", help="JSON instance file")
        p.set_defaults(func=fn)
        return p

    add("validate", cmd_validate, "parse and validate an instance")
    add("chains", cmd_chains, "maximal chains of every interval / morphism")
    add("complex", cmd_complex, "order complex of a poset")
    add("nerve", cmd_nerve, "nerve of a category (posets are converted)")
    p = add("shelling", cmd_shelling, "check the lex order of maximal chains, or search for a shelling")
    p.add_argument("--search", action="store_true")
    p.add_argument("--bound", type=int, default=DEFAULT_FACET_BOUND)
    add("prefix", cmd_prefix, "prefix condition")
    add("lex", cmd_lex, "LEX condition")
    add("sbs", cmd_sbs, "SBS condition")
    p = add("order", cmd_order, "the monomial order induced by the labelling")
    p.add_argument("--explain", nargs=2, metavar=("W", "V"))
    p = add("gb", cmd_gb, "reduced Groebner basis of the parallel ideal")
    p.add_argument("--verify-paper-basis", metavar="FILE")
    add("oracle", cmd_oracle, "compare basis initial terms with the brute-force initial ideal")
    add("quadratic", cmd_quadratic, "is the reduced basis quadratic")
    p = add("verify", cmd_verify, "check the theorem on one labelled instance")
    p.add_argument("--direction", choices=("fwd", "bwd", "both"), default="both")
    p.add_argument("--dump-dir")
    p = add("sweep", cmd_sweep, "exhaustive and random sweep", file=False)
    p.add_argument("--max-elements", type=int, default=6)
    p.add_argument("--max-label", type=int, default=3)
    p.add_argument("--count", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive-max", type=int)
    p.add_argument("--kind", choices=("poset", "category"), default="poset")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--deterministic", action="store_true", help="force a single worker")
    p.add_argument("--verbose", action="store_true", help="include per-pair records")
    p.add_argument("--dump-dir")
    p = add("augment", cmd_augment, "adjoin a bottom and a top")
    p.add_argument("--force", action="store_true", help="augment even when already bounded")
    p.add_argument("-o", "--output")
    return parser


def run_command(argv) -> tuple:
    """Run one command; returns ``(exit_code, report)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code else 0), {"error": "usage"}
    logging.basicConfig(level=args.log_level.upper(), stream=sys.stderr)
    report = {"command": list(argv)}
    if getattr(args, "file", None):
        report["file"] = args.file
    start = time.perf_counter()
    try:
        code, body = args.func(args)
        if getattr(args, "file", None):
            report["digest"] = digest(*_load(args.file))
    except (LexShellError, ValueError) as exc:
        code, body = 2, {"error": type(exc).__name__, "message": str(exc)}
    report.update(body)
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start, 6)
    return code, report


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, report = run_command(argv)
    if report.get("error") != "usage":
        json.dump(report, sys.stdout, indent=2, default=str)
        sys.stdout.write("\n")
    if code == 2 and "message" in report:
        print(f"lexshell: {report['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
