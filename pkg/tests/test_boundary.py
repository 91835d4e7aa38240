from fractions import Fraction

import pytest

from wresidue.boundary import (
    CaseSpec,
    MissingJetError,
    case_prefactor,
    drop_components,
    enumerate_cases,
    evaluate_case,
    extrinsic_form,
)
from wresidue.reference import (
    D2D2_LABELS,
    derived_d2d2,
    expected_d2d2,
    expected_d1d3,
    load_suite,
)
from wresidue.scalars import GR, GR_I, ScalarPoly


def test_case_order_constraint(d2d2, d1d3):
    for result in (d2d2, d1d3):
        assert result.cases, result.suite
        for res in result.cases:
            case = res.case
            assert case.k + case.j + case.alpha_abs == case.r + case.l + 3


def test_case_labels_and_counts(d2d2, d1d3):
    order = ("a-I", "a-II", "a-III", "b", "c")
    for result in (d2d2, d1d3):
        labels = [res.label for res in result.cases]
        assert set(labels) == set(order)
        # report order groups the labels in sequence
        first_seen = [labels[i] for i in range(len(labels))
                      if labels.index(labels[i]) == i]
        assert first_seen == list(order)


def test_prefactor_values():
    base = dict(suite="s", label="x", r=0, l=-2)
    assert case_prefactor(CaseSpec(**base, k=0, j=0, alpha=(1, 0, 0))) == GR(-1)
    assert case_prefactor(CaseSpec(**base, k=0, j=1, alpha=(0, 0, 0))) == \
        GR(Fraction(-1, 2))
    assert case_prefactor(CaseSpec(**base, k=1, j=0, alpha=(0, 0, 0))) == \
        GR(Fraction(-1, 2))
    assert case_prefactor(CaseSpec(suite="s", label="x", r=0, l=-3,
                                   k=0, j=0, alpha=(0, 0, 0))) == -GR_I
    assert case_prefactor(CaseSpec(suite="s", label="x", r=0, l=-2,
                                   k=0, j=0, alpha=(2, 0, 0))) == \
        GR(0, Fraction(1, 2))


def test_enumerate_rejects_unlabelled_cases():
    with pytest.raises(KeyError):
        enumerate_cases("s", (0,), (-2,), {})


def test_tangential_cases_vanish_with_note(d2d2):
    flagged = [res for res in d2d2.cases if res.case.alpha_abs]
    assert flagged
    for res in flagged:
        assert res.value.is_zero()
        assert res.note == "tangential-base-jet-vanishes"


def test_missing_jet_raises(model):
    suite = load_suite("boundary-d2d2", model)
    with pytest.raises(MissingJetError):
        suite.pside.jet(99)
    with pytest.raises(MissingJetError):
        suite.pside.jet(suite.pside.orders()[0], 99)


def test_derivative_transfer_invariance(model):
    """Moving one normal-covariable derivative across the product, with the
    sign flip, cannot change any case value."""
    for name in ("boundary-d2d2", "boundary-d1d3"):
        suite = load_suite(name, model)
        cases = enumerate_cases(name, suite.pside.orders(), suite.qside.orders(),
                                suite.labels)
        for case in cases[:4]:
            plain = evaluate_case(suite.pside, suite.qside, case,
                                  model.pi, model.omega3, shift=0)
            moved = evaluate_case(suite.pside, suite.qside, case,
                                  model.pi, model.omega3, shift=1)
            assert plain.value == moved.value, case.label


def test_shift_range_validated(model):
    suite = load_suite("boundary-d2d2", model)
    case = enumerate_cases("boundary-d2d2", suite.pside.orders(),
                           suite.qside.orders(), suite.labels)[0]
    with pytest.raises(ValueError):
        evaluate_case(suite.pside, suite.qside, case, model.pi, model.omega3,
                      shift=case.j + 2)


def test_groups_additive(d2d2, d1d3):
    for result in (d2d2, d1d3):
        regroup = {}
        total = ScalarPoly.zero(result.total.registry)
        for res in result.cases:
            regroup[res.label] = regroup.get(
                res.label, ScalarPoly.zero(result.total.registry)) + res.value
            total = total + res.value
        assert regroup == result.groups
        assert total == result.total


def test_second_composition_rows_match_frozen_derivation(model, d2d2):
    table = derived_d2d2(model)
    for label, want in table.items():
        got = d2d2.total if label == "total" else d2d2.groups[label]
        assert got == want, label


def test_dual_composition_collar_velocity_coefficient(model, d1d3):
    """The recomputed fourth row carries -3/2 on the normal-component
    velocity atom, times both volume markers."""
    xdy4 = model.registry.by_name("XdY4")
    co = d1d3.groups["b"].coefficient_of({xdy4: 1})
    want = (model.var(model.pi) * model.var(model.omega3)
            * GR(Fraction(-3, 2)))
    assert co == want


def test_first_rows_vanish(d2d2, d1d3):
    assert d2d2.groups["a-I"].is_zero()
    assert d1d3.groups["a-I"].is_zero()


def test_recorded_rows_sum_to_recorded_totals(model):
    for table in (expected_d2d2(model), expected_d1d3(model)):
        acc = ScalarPoly.zero(model.registry)
        for label, row in table.items():
            if label != "total":
                acc = acc + row
        assert acc == table["total"]


# -- post-processing helpers -------------------------------------------------


def test_extrinsic_form(model):
    hp, kext = model.hp, model.kext
    value = model.var(hp) * GR(3) + model.var(model.pi)
    got = extrinsic_form(value, hp, kext)
    assert got == model.var(kext) * GR(-2) + model.var(model.pi)


def test_drop_components(model):
    x4 = model.registry.by_name("X4")
    y1 = model.registry.by_name("Y1")
    value = model.var(x4) * model.var(y1) + model.var(y1)
    assert drop_components(value, (x4,)) == model.var(y1)
    assert drop_components(value, (y1,)).is_zero()
