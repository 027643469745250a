import pytest
from hypothesis import given, settings

from lexshell.category import (
    augment_category,
    build_category,
    category_to_poset,
    poset_labelling_to_category,
    poset_to_category,
)
from lexshell.errors import (
    CycleDetected,
    GeneratorDecomposable,
    RelationEndpointMismatch,
    UnknownElement,
    ValidationError,
)
from lexshell.labellings import check_prefix_condition, check_sbs_condition
from strategies import bounded_posets, closure, labelled_posets


def test_exac_has_eight_morphisms(exac):
    c, _ = exac
    assert len(c.morphisms) == 8
    assert sum(m.is_identity for m in c.morphisms) == 3
    assert {m.id for m in c.non_identity_morphisms} == {"alpha1", "alpha2", "beta", "gamma", "alpha1.beta"}


def test_exac_composition(exac):
    c, _ = exac
    assert c.compose("alpha1", "beta") == c.compose("alpha2", "beta") == "alpha1.beta"
    assert len(c.hom("x0", "x2")) == 2
    assert c.initial_object is None and not c.is_augmented


def test_exac_augmented(exac):
    c, _ = exac
    a = augment_category(c)
    assert len(a.objects) == 5
    assert a.is_augmented
    assert augment_category(a) is a
    assert len(augment_category(a, force=True).objects) == 7


def test_generator_cycle_rejected():
    with pytest.raises(CycleDetected):
        build_category(["x", "y"], [("f", "x", "y"), ("g", "y", "x")])


def test_relation_errors():
    gens = [("f", "x", "y"), ("g", "y", "z"), ("h", "x", "z")]
    with pytest.raises(UnknownElement):
        build_category(["x", "y", "z"], gens, [(["f", "q"], ["h"])])
    with pytest.raises(RelationEndpointMismatch):
        build_category(["x", "y", "z"], gens, [(["f"], ["h"])])
    with pytest.raises(GeneratorDecomposable):
        build_category(["x", "y", "z"], gens, [(["f", "g"], ["h"])])


def test_identifying_generators_rejected():
    with pytest.raises(ValidationError):
        build_category(["x", "y"], [("f", "x", "y"), ("g", "x", "y")], [(["f"], ["g"])])


@settings(max_examples=40, deadline=None)
@given(bounded_posets(6))
def test_poset_category_has_one_morphism_per_interval(p):
    c = poset_to_category(p)
    assert len(c.morphisms) == len(closure(p.elements, p.covers))
    back = category_to_poset(c)
    assert set(back.covers) == set(p.covers)


@settings(max_examples=40, deadline=None)
@given(labelled_posets(6))
def test_sbs_agrees_on_poset_as_category(pl):
    p, lab = pl
    if not check_prefix_condition(p, lab):
        return
    c = poset_to_category(p)
    assert check_sbs_condition(p, lab).ok == check_sbs_condition(c, poset_labelling_to_category(lab)).ok
