from fractions import Fraction

import pytest

from wresidue.interior import (
    InteriorSetting,
    curvature_form_traces,
    endomorphism_blocks,
    first_principles_coefficients,
    trace_endomorphism,
    trace_identity,
)
from wresidue.reference import INTERIOR_CASES, interior_expected

RANKS = ((2, 2), (4, 2), (2, 4))


def test_trace_identity_values():
    assert trace_identity(2, 2) == 8
    assert trace_identity(4, 2) == 16
    assert trace_identity(2, 4) == 32


def test_endomorphism_scalar_coefficient():
    for p, q in RANKS:
        coeff, blocks = trace_endomorphism(p, q)
        assert coeff == Fraction(2) ** (p // 2 + q - 2)


def test_endomorphism_curvature_blocks_traceless():
    for p, q in RANKS:
        _, blocks = trace_endomorphism(p, q)
        for name, value in blocks.items():
            if name == "scalar":
                continue
            assert value.is_zero(), (p, q, name)


def test_endomorphism_block_structure():
    from wresidue.scalars import GR

    setting = InteriorSetting(2, 2)
    blocks = endomorphism_blocks(setting)
    assert set(blocks) == {"scalar", "mixed-pair", "leaf-pair", "perp-pair"}
    scalar = blocks["scalar"].trace(2, 2)
    assert scalar == setting.var(setting.scurv) * GR(2)


def test_derivative_and_commutator_traces_vanish():
    for p, q in RANKS:
        for name, value in curvature_form_traces(p, q).items():
            assert value.is_zero(), (p, q, name)


def test_dual_route_agreement():
    for p, q, n in INTERIOR_CASES:
        closed = interior_expected(p, q, n)
        derived = first_principles_coefficients(p, q, n)
        assert derived.einstein == closed["einstein"], (p, q, n)
        assert derived.scalar == closed["scalar"], (p, q, n)
        assert derived.two_form == closed["two-form"] == 0, (p, q, n)
        assert derived.endo_trace == closed["endo-trace"], (p, q, n)


def test_reference_rank_values():
    table = interior_expected(2, 2, 4)
    assert table["einstein"] == Fraction(8, 3)
    assert table["scalar"] == 1
    assert table["two-form"] == 0
    assert table["endo-trace"] == 2


def test_parity_guards():
    with pytest.raises(ValueError):
        first_principles_coefficients(2, 2, 5)
    with pytest.raises(ValueError):
        InteriorSetting(3, 2)
