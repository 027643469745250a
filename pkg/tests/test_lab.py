import json

import pytest

from conftest import FIXTURES, chain_poset, double_chain
from lexshell.category import AcyclicCategory, augment_category
from lexshell.errors import SweepBudgetExceeded, TheoremViolation
from lexshell.io import dumps_instance, parse_instance
from lexshell.lab import (
    SweepConfig,
    analyse,
    bounded_posets,
    equivalence_sweep,
    inner_posets,
    random_instance,
    restriction_holds,
    verify_backward,
    verify_forward,
)


def test_random_instance_is_deterministic():
    a = random_instance(11, 7, 0.5)
    b = random_instance(11, 7, 0.5)
    assert dumps_instance(a) == dumps_instance(b)
    assert a.is_bounded


def test_two_elements_give_the_two_chain():
    p = random_instance(5, 2)
    assert len(p.elements) == 2 and len(p.covers) == 1


def test_pinned_regression_instance():
    p = random_instance(7, 7, 0.4)
    assert dumps_instance(p) + "\n" == (FIXTURES / "random_seed7.json").read_text()


def test_random_category_is_augmented():
    c = random_instance(3, 6, 0.6, kind="category")
    assert isinstance(c, AcyclicCategory) and c.is_augmented
    assert dumps_instance(c) == dumps_instance(random_instance(3, 6, 0.6, kind="category"))
    with pytest.raises(ValueError):
        random_instance(3, 6, kind="lattice")


def test_poset_counts_up_to_isomorphism():
    # 1, 1, 2, 5, 16 posets on 0..4 points
    assert [len(inner_posets(m)) for m in range(5)] == [1, 1, 2, 5, 16]
    assert [len(bounded_posets(n)) for n in range(1, 7)] == [1, 1, 1, 2, 5, 16]
    assert all(p.is_bounded for p in bounded_posets(6))


def test_verify_forward_examples(fig1, exac):
    p, lab = fig1
    report = verify_forward(p, lab)
    assert report["quadratic"] and len(report["basis"]["initial_terms"]) == 3
    chain = chain_poset(3)
    report = verify_forward(chain, {e: 1 for e in chain.edge_ids})
    assert report["quadratic"] and report["basis"]["elements"] == []
    c, clab = exac
    a = augment_category(c)
    full = dict(clab, **{"0^>x0": 1, "x2>1^": 1})
    assert verify_forward(a, full)["quadratic"]


def test_verify_forward_not_applicable():
    p, lab = double_chain()
    assert verify_forward(p, lab)["applicable"] is False


def test_verify_backward_examples(fig1):
    p, lab = fig1
    report = verify_backward(p, lab)
    assert report["quadratic"] and report["sbs"]
    q, qlab = double_chain()
    report = verify_backward(q, qlab)
    assert not report["quadratic"] and not report["sbs"]


def test_backward_direction_flags_nongraded_instance(counterexample, tmp_path):
    p, lab = counterexample
    with pytest.raises(TheoremViolation) as info:
        verify_backward(p, lab, dump_dir=tmp_path)
    dump = info.value.dump
    replay, replay_lab = parse_instance(json.dumps(dump["instance"]))
    assert dumps_instance(replay, replay_lab) == dumps_instance(p, lab)
    files = list(tmp_path.glob("violation-backward-*.json"))
    assert len(files) == 1


def test_analyse_fig1(fig1):
    rec = analyse(*fig1)
    for key in ("prefix", "sbs", "lex", "quadratic", "oracle_match", "dimension",
                "truncation_dimension", "order_laws", "shelling", "restriction"):
        assert rec[key] is True, key


def test_restriction_on_fig1(fig1):
    assert restriction_holds(*fig1)


def test_count_zero_gives_empty_summary():
    s = equivalence_sweep({"count": 0, "exhaustive_max": 0})
    assert s["counts"]["instances"] == 0 and s["counts"]["labellings"] == 0
    assert not s["witnesses"]


def test_small_sweep_is_clean_on_graded_part():
    s = equivalence_sweep({"max_elements": 5, "max_label": 3})
    assert s["discrepancies"]["lex_vs_sbs"] == 0
    assert s["discrepancies"]["oracle"] == 0
    assert s["theorem_violations"]["forward"] == 0
    assert s["existential"]["disagreements"] == 0


def test_parallel_sweep_matches_serial():
    cfg = {"max_elements": 7, "count": 20, "seed": 9, "exhaustive_max": 4}
    serial = equivalence_sweep(cfg)
    parallel = equivalence_sweep(dict(cfg, jobs=2))
    serial.pop("config"), parallel.pop("config")
    assert serial == parallel


def test_category_sweep():
    s = equivalence_sweep({"kind": "category", "max_elements": 6, "count": 30, "seed": 2})
    assert s["counts"]["instances"] == 30
    for key in ("oracle", "dimension", "truncation_dimension", "order_laws", "shelling", "lex_vs_sbs"):
        assert s["discrepancies"][key] == 0, key
    assert s["theorem_violations"]["forward"] == 0


def test_sweep_budget():
    with pytest.raises(SweepBudgetExceeded):
        equivalence_sweep({"max_elements": 6, "max_pairs": 100})


def test_sweep_dumps_violations(tmp_path):
    s = equivalence_sweep({"max_elements": 5, "dump_dir": str(tmp_path)})
    files = list(tmp_path.glob("violation-*.json"))
    assert len(files) == sum(s["theorem_violations"].values()) > 0
    doc = json.loads(files[0].read_text())
    parse_instance(json.dumps(doc["instance"]))
