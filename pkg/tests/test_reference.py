from fractions import Fraction

import pytest

from wresidue.reference import (
    DATA_VERSION,
    FINGERPRINT_RECIPES,
    builtin_waivers,
    derived_d1d3_structure,
    derived_fingerprints,
    display_checks,
    dump_records,
    expected_d2d2,
    expected_d1d3,
    interior_expected,
    load_suite,
    row_fingerprint,
    source_c_bracket_d1d3,
    source_c_integrand_d2d2,
)
from wresidue.scalars import GR, KIND_CONN, KIND_MARKER, KIND_X, KIND_Y
from wresidue.sphere import integrate_sphere


def test_markers_are_formal(model):
    for ind in (model.pi, model.omega3, model.scurv, model.kext):
        assert ind.kind == KIND_MARKER


def test_divergence_scalar(model):
    want = -(model.nab_p(1, 2, 3) + model.nab_tm(1, 2, 1) + model.nab_tm(2, 2, 2))
    assert model.div_poly == want


def test_quadratic_blocks(model):
    x4 = model.registry.by_name("X4")
    y4 = model.registry.by_name("Y4")
    assert model.n_hat == model.var(x4) * model.var(y4)
    sig = model.sigma_hat
    assert sig.coefficient_of({x4: 1, y4: 1}).is_zero()
    for a in (1, 2, 3):
        xa = model.registry.by_name(f"X{a}")
        ya = model.registry.by_name(f"Y{a}")
        assert sig.coefficient_of({xa: 1, ya: 1}).constant_part() == GR(1)


def test_recorded_row_coefficients(model):
    hp, pi, om = model.hp, model.pi, model.omega3
    x1, y1 = model.registry.by_name("X1"), model.registry.by_name("Y1")
    x4, y4 = model.registry.by_name("X4"), model.registry.by_name("Y4")

    def coeffs(row):
        tang = row.coefficient_of({hp: 1, pi: 1, om: 1, x1: 1, y1: 1})
        norm = row.coefficient_of({hp: 1, pi: 1, om: 1, x4: 1, y4: 1})
        return tang.constant_part(), norm.constant_part()

    t2 = expected_d2d2(model)
    assert coeffs(t2["a-II"]) == (GR(Fraction(5, 24)), GR(Fraction(-1, 8)))
    assert coeffs(t2["b"]) == (GR(Fraction(11, 24)), GR(Fraction(-11, 8)))
    assert coeffs(t2["total"]) == (GR(Fraction(-5, 24)), GR(Fraction(-3, 2)))
    t3 = expected_d1d3(model)
    assert coeffs(t3["a-II"]) == (GR(Fraction(5, 16)), GR(Fraction(1, 16)))
    assert coeffs(t3["c"]) == (GR(Fraction(129, 320), Fraction(-44, 320)),
                               GR(Fraction(-245, 96), Fraction(26, 96)))


def test_display_checks_all_reproduce(model):
    for check in display_checks(model):
        assert check.engine == check.encoded, check.record_id


def test_recorded_final_case_integrand_second_composition(model):
    f = source_c_integrand_d2d2(model)
    line = f.integrate(model.pi).scalar_part()
    value = integrate_sphere(line, model.xi, model.omega3) * GR(0, -1)
    assert value == expected_d2d2(model)["c"]


def test_recorded_bracket_dual_composition_frozen_value(model):
    """The recorded rational bracket integrates to (19/8 + i/32)*pi; the
    engine's final-case row is not a multiple of it, so only this frozen
    integral is asserted."""
    got = source_c_bracket_d1d3(model).integrate(model.pi).scalar_part()
    want = model.var(model.pi) * GR(Fraction(19, 8), Fraction(1, 32))
    assert got == want


# -- frozen re-derivation oracles -------------------------------------------


def _engine_rows(result):
    rows = dict(result.groups)
    rows["total"] = result.total
    return rows


def test_engine_rows_match_frozen_fingerprints(model, d2d2, d1d3):
    table = derived_fingerprints()
    for suite_name, result in (("boundary-d2d2", d2d2), ("boundary-d1d3", d1d3)):
        rows = _engine_rows(result)
        for recipe, offset, mul in FINGERPRINT_RECIPES:
            frozen = table[suite_name][recipe]
            assert set(frozen) == set(rows)
            for label, row in rows.items():
                got = row_fingerprint(model, row, offset, mul)
                assert got == frozen[label], (suite_name, recipe, label)


def test_dual_composition_structure_decomposition(model, d1d3):
    """Engine rows split into the legible quadratic/velocity/divergence part
    plus a residual built purely from connection atoms."""
    structure = derived_d1d3_structure(model)
    hp_id = model.hp.id
    xdy_ids = {model.registry.by_name(f"XdY{a}").id for a in (1, 2, 3, 4)}
    marker_ids = {model.pi.id, model.omega3.id}
    rows = _engine_rows(d1d3)
    for label, legible in structure.items():
        residual = rows[label] - legible
        assert not residual.is_zero(), label
        for mono, _ in residual.terms.items():
            ids = {iid for iid, _ in mono}
            assert hp_id not in ids, label
            assert not (ids & xdy_ids), label
            assert marker_ids <= ids, label
            kinds = {model.registry[iid].kind for iid in ids - marker_ids}
            assert KIND_CONN in kinds, label
            assert kinds <= {KIND_CONN, KIND_X, KIND_Y}, (label, kinds)


def test_builtin_waivers_cover_disputed_rows():
    got = {(w.suite, w.label) for w in builtin_waivers()}
    assert got == {
        ("boundary-d2d2", "c"), ("boundary-d2d2", "total"),
        ("boundary-d1d3", "b"), ("boundary-d1d3", "c"),
        ("boundary-d1d3", "total"),
    }
    for w in builtin_waivers():
        assert w.reason


def test_interior_expected_closed_forms():
    for (p, q, n), einstein in (((2, 2, 4), Fraction(8, 3)),
                                ((4, 0, 4), Fraction(4, 3)),
                                ((2, 4, 6), Fraction(16, 3))):
        table = interior_expected(p, q, n)
        assert table["einstein"] == einstein
        assert table["scalar"] == Fraction(2) ** (p // 2 + q - 3)
        assert table["two-form"] == 0
        assert table["endo-trace"] == Fraction(2) ** (p // 2 + q - 2)


def test_load_suite_rejects_unknown():
    with pytest.raises(KeyError):
        load_suite("no-such-suite")


def test_dump_records_versioned(model):
    text = dump_records(model)
    assert DATA_VERSION in text
