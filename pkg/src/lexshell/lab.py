"""Executable checks of the quadratic-basis / lex-shellability correspondence.

``analyse`` runs the whole pipeline for one (instance, labelling) pair and
``equivalence_sweep`` aggregates it over exhaustive and seeded random
families of bounded posets (and, optionally, augmented categories).
"""

from __future__ import annotations

import itertools
import json
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path as FsPath

from .algebra import MonomialOrder
from .category import AcyclicCategory, Generator, augment_category, build_category
from .complexes import DEFAULT_FACET_BOUND, is_shelling, nerve, order_complex
from .errors import IncomparableTie, SweepBudgetExceeded, TheoremViolation
from .groebner import (
    _factors,
    dimension_check,
    initial_ideal_oracle,
    is_quadratic,
    minimal_generators,
    parallel_basis,
    truncation_basis,
)
from .io import basis_document, digest, dumps_instance, parse_instance, serialize_instance
from .labellings import (
    EdgeLabelling,
    Verdict,
    as_labelling,
    check_lex_condition,
    check_prefix_condition,
    check_sbs_condition,
    dense_labellings,
)
from .poset import Poset, augment, build_poset, closed_interval, interval_poset
from .quiver import Path

log = logging.getLogger(__name__)

ORDER_LAW_LIMIT = 200
EXHAUSTIVE_LIMIT = 6


# -- order laws ---------------------------------------------------------------


def check_order_laws(order: MonomialOrder) -> Verdict:
    """Rule-based comparison is a strict total order with both monomial-order properties.

    (1) ``w < u`` and ``v w s``, ``v u s`` nonzero imply ``v w s < v u s``;
    (2) ``u = v w s`` with ``v`` or ``s`` nontrivial implies ``u < w``.
    """
    inst = order.inst
    mons = order.monomials
    rank = order.rank
    for i, w in enumerate(mons):
        for u in mons[i + 1:]:
            sign = order.compare(w, u)
            if sign != -1 or order.compare(u, w) != 1:
                return Verdict(False, ("trichotomy", w, u))
    for w in mons:
        for v in inst.paths_ending_at[w.dom]:
            for s in inst.paths_starting_at[inst.cod(w)]:
                if not v.edges and not s.edges:
                    continue
                big = Path(v.dom, v.edges + w.edges + s.edges)
                if not rank[big] < rank[w]:
                    return Verdict(False, ("property 2", v, w, s))
    # only pairs sharing an endpoint can be multiplied on that side
    for w, u in itertools.permutations(mons, 2):
        if rank[w] > rank[u] or (w.dom != u.dom and inst.cod(w) != inst.cod(u)):
            continue
        lefts = [Path(w.dom, ())]
        if w.dom == u.dom:
            lefts += [v for v in inst.paths_ending_at[w.dom] if v.edges]
        rights = [Path(inst.cod(w), ())]
        if inst.cod(w) == inst.cod(u):
            rights += [t for t in inst.paths_starting_at[inst.cod(w)] if t.edges]
        for v in lefts:
            for t in rights:
                if not v.edges and not t.edges:
                    continue
                lhs = Path(w.dom if not v.edges else v.dom, v.edges + w.edges + t.edges)
                rhs = Path(u.dom if not v.edges else v.dom, v.edges + u.edges + t.edges)
                if not rank[lhs] < rank[rhs]:
                    return Verdict(False, ("property 1", v, w, u, t))
    return Verdict(True)


# -- shelling linkage -----------------------------------------------------------


def lex_order_is_shelling(inst, order: MonomialOrder, bound: int = DEFAULT_FACET_BOUND):
    """Whether the lex order of maximal chains shells the order complex / nerve.

    ``None`` when there are more than ``bound`` facets.
    """
    if len(order.shelling) > bound:
        return None
    if isinstance(inst, Poset):
        k = order_complex(inst)
        return is_shelling(k, [inst.vertex_sequence(c) for c in order.shelling], vertices=True)
    k = nerve(inst)
    index = [{f: i for i, f in enumerate(fs)} for fs in k.faces]
    facets = [(c.degree, index[c.degree][c.edges]) for c in order.shelling]
    return is_shelling(k, facets)


# -- one pair -------------------------------------------------------------------


def _closure_of(inst, leads) -> frozenset:
    leads = set(leads)
    return frozenset(
        p for p in inst.nontrivial_paths if any(sub in leads for _, _, sub in _factors(inst, p))
    )


def _least_is_longest(inst, labels) -> bool:
    for chains in inst.scopes.values():
        best = min(chains, key=labels.sequence)
        if best.degree != max(c.degree for c in chains):
            return False
    return True


def restriction_holds(p: Poset, labels) -> bool:
    """Every interval with several chains has a quadratic basis of its own."""
    lab = as_labelling(labels)
    for (x, y), chains in p.scopes.items():
        if len(chains) < 2 or (x, y) == (p.bottom, p.top):
            continue
        sub = interval_poset(closed_interval(p, x, y))
        sub_lab = EdgeLabelling({e: lab[e] for e in sub.edge_ids})
        if not is_quadratic(parallel_basis(sub, MonomialOrder(sub, sub_lab))):
            return False
    return True


def analyse(inst, labels, *, order_law_limit=ORDER_LAW_LIMIT, facet_bound=DEFAULT_FACET_BOUND) -> dict:
    """Run every check on one (instance, labelling) pair and return a flat record."""
    lab = as_labelling(labels)
    rec: dict = {"prefix": bool(check_prefix_condition(inst, lab))}
    if not rec["prefix"]:
        return rec
    sbs = check_sbs_condition(inst, lab)
    rec["sbs"] = sbs.ok
    rec["lex"] = check_lex_condition(inst, lab).ok
    rec["least_is_longest"] = _least_is_longest(inst, lab)
    try:
        order = MonomialOrder(inst, lab)
    except IncomparableTie as exc:
        rec["tie"] = str(exc)
        return rec
    G = parallel_basis(inst, order)
    oracle = initial_ideal_oracle(inst, order)
    rec["quadratic"] = is_quadratic(G)
    rec["initial_terms"] = sorted(inst.render(m) for m in G.initial_terms)
    rec["oracle_match"] = minimal_generators(inst, oracle) == frozenset(G.initial_terms)
    rec["oracle_closure_match"] = _closure_of(inst, G.initial_terms) == oracle
    rec["dimension"] = dimension_check(inst, G)
    rec["truncation_dimension"] = dimension_check(inst, truncation_basis(G))
    rec["monomials"] = len(order.monomials)
    if len(order.monomials) <= order_law_limit:
        rec["order_laws"] = check_order_laws(order).ok
    if isinstance(inst, Poset) and rec["quadratic"]:
        rec["restriction"] = restriction_holds(inst, lab)
    if sbs.ok:
        rec["shelling"] = lex_order_is_shelling(inst, order, facet_bound)
    return rec


# -- theorem directions ---------------------------------------------------------


def _dump(inst, lab, direction, detail, dump_dir):
    doc = {
        "direction": direction,
        "detail": detail,
        "instance": serialize_instance(inst, lab),
    }
    if dump_dir is not None:
        out = FsPath(dump_dir)
        out.mkdir(parents=True, exist_ok=True)
        target = out / f"violation-{direction}-{digest(inst, lab)}.json"
        target.write_text(json.dumps(doc, indent=2, default=str))
        doc["fixture"] = str(target)
    return doc


def _base_report(inst, lab):
    sbs = check_sbs_condition(inst, lab)
    order = MonomialOrder(inst, lab)
    G = parallel_basis(inst, order)
    report = {
        "sbs": sbs.ok,
        "sbs_witness": None if sbs.ok else inst.render(sbs.witness[1]),
        "basis": basis_document(inst, G),
    }
    report["quadratic"] = report["basis"]["quadratic"]
    return report


def verify_forward(inst, labels, dump_dir=None) -> dict:
    """SBS labelling => the parallel ideal has a quadratic basis."""
    lab = as_labelling(labels)
    if not check_prefix_condition(inst, lab):
        return {"applicable": False, "reason": "prefix condition fails"}
    if not check_sbs_condition(inst, lab):
        return {"applicable": False, "reason": "labelling does not satisfy SBS"}
    report = {"applicable": True, **_base_report(inst, lab)}
    if not report["quadratic"]:
        dump = _dump(inst, lab, "forward", report, dump_dir)
        raise TheoremViolation("SBS labelling with a non-quadratic basis", dump)
    return report


def verify_backward(inst, labels, dump_dir=None) -> dict:
    """Quadratic basis => the labelling satisfies SBS."""
    lab = as_labelling(labels)
    if not check_prefix_condition(inst, lab):
        return {"applicable": False, "reason": "prefix condition fails"}
    report = {"applicable": True, **_base_report(inst, lab)}
    if report["quadratic"] and not report["sbs"]:
        dump = _dump(inst, lab, "backward", report, dump_dir)
        raise TheoremViolation("quadratic basis but the labelling fails SBS", dump)
    return report


# -- instance families ----------------------------------------------------------


def _canonical(m: int, rel: frozenset) -> tuple:
    return min(
        tuple(sorted((perm[i], perm[j]) for i, j in rel))
        for perm in itertools.permutations(range(m))
    )


def inner_posets(m: int) -> list:
    """Posets on ``m`` points up to isomorphism, as sets of strict relations ``i < j``."""
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    seen = {}
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        rel = frozenset(p for p, b in zip(pairs, bits) if b)
        if any((i, k) not in rel for (i, j) in rel for (jj, k) in rel if j == jj):
            continue
        seen.setdefault(_canonical(m, rel), rel)
    return [seen[k] for k in sorted(seen)]


def _bounded_from_relation(m: int, rel) -> Poset:
    inner = build_poset([f"p{i}" for i in range(m)], [(f"p{i}", f"p{j}") for i, j in sorted(rel)])
    return augment(inner)


def bounded_posets(n: int) -> list:
    """All bounded posets with ``n`` elements, up to isomorphism."""
    if n <= 0:
        return []
    if n == 1:
        return [build_poset(["0^"], [])]
    return [_bounded_from_relation(n - 2, rel) for rel in inner_posets(n - 2)]


def random_instance(seed, elements: int, edge_density: float = 0.4, kind: str = "poset"):
    """Deterministic bounded poset (or augmented category) from ``seed``."""
    rng = random.Random(seed)
    if kind == "poset":
        if elements <= 1:
            return build_poset(["0^"], [])
        m = elements - 2
        rel = [(i, j) for i in range(m) for j in range(i + 1, m) if rng.random() < edge_density]
        return _bounded_from_relation(m, rel)
    if kind == "category":
        return _random_category(rng, max(elements - 2, 0), edge_density)
    raise ValueError(f"unknown kind {kind!r}")


def _random_category(rng: random.Random, m: int, density: float) -> AcyclicCategory:
    objects = [f"o{i}" for i in range(m)]
    gens = []
    for i in range(m):
        for j in range(i + 1, m):
            if rng.random() < density:
                count = 2 if rng.random() < 0.3 else 1
                gens += [Generator(f"g{i}{j}{'ab'[k]}", objects[i], objects[j]) for k in range(count)]
    draft = build_category(objects, gens)
    by_ends: dict = {}
    for p in draft.nontrivial_paths:
        if p.degree >= 2:
            by_ends.setdefault((p.dom, draft.cod(p)), []).append(p)
    relations = []
    for paths in by_ends.values():
        for p, q in itertools.combinations(paths, 2):
            if rng.random() < 0.5:
                relations.append((p, q))
    return augment_category(build_category(objects, gens, relations))


# -- sweep ----------------------------------------------------------------------


@dataclass
class SweepConfig:
    max_elements: int = 6
    max_label: int = 3
    count: int = 0
    seed: int = 0
    exhaustive_max: int | None = None
    kind: str = "poset"
    edge_density: float = 0.4
    extra_random_labellings: int = 2
    max_pairs: int = 2_000_000
    jobs: int = 1
    keep_records: bool = False
    dump_dir: str | None = None

    @property
    def exhaustive_upto(self) -> int:
        if self.exhaustive_max is not None:
            return self.exhaustive_max
        return min(self.max_elements, EXHAUSTIVE_LIMIT) if self.kind == "poset" else 0


def _work_items(cfg: SweepConfig):
    """``(source, instance, [labellings])`` in a deterministic order."""
    for n in range(1, cfg.exhaustive_upto + 1):
        for p in bounded_posets(n):
            labs = [EdgeLabelling(dict(zip(p.edge_ids, v))) for v in dense_labellings(len(p.edge_ids), cfg.max_label)]
            yield f"exhaustive n={n}", p, labs
    rng = random.Random(cfg.seed)
    for k in range(cfg.count):
        inst = random_instance(rng.randrange(2**32), cfg.max_elements, cfg.edge_density, cfg.kind)
        edges = list(inst.edge_ids)
        perm = list(range(1, len(edges) + 1))
        rng.shuffle(perm)
        labs = [EdgeLabelling(dict(zip(edges, perm)))]
        for _ in range(cfg.extra_random_labellings):
            labs.append(EdgeLabelling({e: rng.randint(1, cfg.max_label) for e in edges}))
        yield f"random #{k}", inst, labs


def _run_item(args):
    source, inst_json, labs = args
    inst, _ = parse_instance(inst_json)
    out = []
    for lab in labs:
        rec = analyse(inst, lab)
        rec["source"] = source
        rec["labels"] = [lab[e] for e in inst.edge_ids]
        out.append(rec)
    return inst_json, out


def equivalence_sweep(config: SweepConfig | dict) -> dict:
    """Sweep bounded posets (or categories) and labellings; tally every check.

    Theorem-direction failures are collected (and dumped when ``dump_dir``
    is set) instead of aborting, so one run reports all of them.
    """
    cfg = config if isinstance(config, SweepConfig) else SweepConfig(**config)
    items = [(src, dumps_instance(inst), labs) for src, inst, labs in _work_items(cfg)]
    pairs = sum(len(it[2]) for it in items)
    if pairs > cfg.max_pairs:
        raise SweepBudgetExceeded(f"{pairs} pairs exceeds the budget of {cfg.max_pairs}")

    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_item, items, chunksize=4))
    else:
        results = [_run_item(it) for it in items]
    return summarise(results, cfg)


_CHECKS = (
    ("oracle_match", "oracle"),
    ("oracle_closure_match", "oracle_closure"),
    ("dimension", "dimension"),
    ("truncation_dimension", "truncation_dimension"),
    ("order_laws", "order_laws"),
    ("shelling", "shelling"),
    ("restriction", "restriction"),
)


def summarise(results, cfg: SweepConfig) -> dict:
    counts = {
        "instances": 0,
        "labellings": 0,
        "prefix_valid": 0,
        "sbs_true": 0,
        "quadratic_true": 0,
        "ties": 0,
    }
    mismatch = {
        "quadratic_vs_sbs": [],
        "lex_vs_sbs": [],
        **{name: [] for _, name in _CHECKS},
    }
    checked = {name: 0 for _, name in _CHECKS}
    violations = {"forward": [], "backward": []}
    existential = {"instances_any_sbs": 0, "instances_any_quadratic": 0, "disagreements": []}
    records = []
    for inst_json, recs in results:
        counts["instances"] += 1
        any_sbs = any_quad = False
        for rec in recs:
            counts["labellings"] += 1
            if not rec["prefix"]:
                continue
            counts["prefix_valid"] += 1
            if "tie" in rec:
                counts["ties"] += 1
                continue
            witness = {"source": rec["source"], "instance": json.loads(inst_json), "labels": rec["labels"]}
            counts["sbs_true"] += rec["sbs"]
            counts["quadratic_true"] += rec["quadratic"]
            any_sbs |= rec["sbs"]
            any_quad |= rec["quadratic"]
            if rec["sbs"] != rec["quadratic"]:
                mismatch["quadratic_vs_sbs"].append({**witness, "sbs": rec["sbs"], "quadratic": rec["quadratic"],
                                                     "least_is_longest": rec["least_is_longest"]})
                direction = "forward" if rec["sbs"] else "backward"
                inst, _ = parse_instance(inst_json)
                lab = EdgeLabelling(dict(zip(inst.edge_ids, rec["labels"])))
                violations[direction].append(_dump(inst, lab, direction, rec["initial_terms"], cfg.dump_dir))
            if rec["lex"] != rec["sbs"]:
                mismatch["lex_vs_sbs"].append(witness)
            for key, name in _CHECKS:
                if key in rec and rec[key] is not None:
                    checked[name] += 1
                    if not rec[key]:
                        mismatch[name].append(witness)
            if cfg.keep_records:
                records.append({**rec, "instance": json.loads(inst_json)})
        # only exhaustive families try every labelling of an instance
        if not recs or not recs[0]["source"].startswith("exhaustive"):
            continue
        existential["instances_any_sbs"] += any_sbs
        existential["instances_any_quadratic"] += any_quad
        if any_sbs != any_quad:
            existential["disagreements"].append(json.loads(inst_json))
    summary = {
        "config": asdict(cfg),
        "counts": counts,
        "checked": checked,
        "discrepancies": {k: len(v) for k, v in mismatch.items()},
        "theorem_violations": {k: len(v) for k, v in violations.items()},
        "existential": {
            "instances_any_sbs": existential["instances_any_sbs"],
            "instances_any_quadratic": existential["instances_any_quadratic"],
            "disagreements": len(existential["disagreements"]),
        },
        "witnesses": {k: v[:5] for k, v in mismatch.items() if v},
        "violation_examples": {k: v[:3] for k, v in violations.items() if v},
        "existential_examples": existential["disagreements"][:3],
    }
    if cfg.keep_records:
        summary["records"] = records
    return summary
