import random
from fractions import Fraction

import pytest

import props
from wresidue.clifford import (
    CF,
    CN,
    HC,
    CliffordElement,
    c_dxn,
    c_frame,
    fiber_dimension,
    generator_square_sign,
    hatc,
)
from wresidue.oracles import element_matrix, generator_matrices
from wresidue.scalars import GR, GR_ONE, Registry, ScalarPoly

LETTERS = ((CF, 1), (CF, 2), (CN, 1), (CN, 2), (HC, 1), (HC, 2))


@pytest.fixture()
def reg():
    return Registry()


def _gen(reg, kind, index):
    return CliffordElement.generator(reg, kind, index)


def test_generator_squares(reg):
    for kind, sign in ((CF, -1), (CN, -1), (HC, 1)):
        g = _gen(reg, kind, 1)
        assert generator_square_sign((kind, 1)) == sign
        assert g * g == CliffordElement.identity(reg, ScalarPoly.const(reg, GR(sign)))


def test_distinct_generators_anticommute(reg):
    gens = [_gen(reg, k, i) for k, i in LETTERS]
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            assert gens[a] * gens[b] + gens[b] * gens[a] == CliffordElement.zero(reg)


def test_identity_trace(reg):
    assert fiber_dimension(2, 2) == 8
    assert CliffordElement.identity(reg).trace(2, 2) == ScalarPoly.const(reg, GR(8))


def test_nonidentity_words_are_traceless(reg):
    for kind, index in LETTERS:
        assert _gen(reg, kind, index).trace(2, 2).is_zero()
    prod = _gen(reg, CF, 1) * _gen(reg, HC, 2)
    assert prod.trace(2, 2).is_zero()


def _random_element(reg, rng, max_words=4):
    out = CliffordElement.zero(reg)
    for _ in range(rng.randint(1, max_words)):
        coeff = GR(Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
                   Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
        term = CliffordElement.identity(reg, ScalarPoly.const(reg, coeff))
        for letter in rng.sample(LETTERS, rng.randint(0, len(LETTERS))):
            term = term * _gen(reg, *letter)
        out = out + term
    return out


def test_word_mul_confluence():
    """Normal ordering is associative however a product is parenthesised."""
    props.check_word_confluence(2000)


def test_element_product_associativity(reg):
    rng = random.Random(5)
    for _ in range(200):
        a, b, c = (_random_element(reg, rng, 3) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_trace_cyclicity():
    props.check_trace_cyclicity(2000)


def test_product_trace_equals_full_product_trace(reg):
    rng = random.Random(31)
    for _ in range(400):
        a = _random_element(reg, rng)
        b = _random_element(reg, rng)
        assert a.product_trace(b, 2, 2) == (a * b).trace(2, 2)


# -- matrix realization oracle ----------------------------------------------


def test_matrix_relations():
    mats = generator_matrices()
    import numpy as np
    eye = np.eye(8)
    for gen, m in mats.items():
        sign = generator_square_sign(gen)
        assert np.allclose(m @ m, sign * eye)
    keys = list(mats)
    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            ma, mb = mats[keys[a]], mats[keys[b]]
            assert np.allclose(ma @ mb + mb @ ma, 0)


def test_matrix_oracle_trace():
    props.check_matrix_trace_oracle(300)


def test_matrix_oracle_products(reg):
    import numpy as np
    rng = random.Random(43)
    for _ in range(300):
        a = _random_element(reg, rng, 3)
        b = _random_element(reg, rng, 3)
        lhs = element_matrix(a * b, {})
        rhs = element_matrix(a, {}) @ element_matrix(b, {})
        assert np.allclose(lhs, rhs, atol=1e-9)


# -- frame helpers ----------------------------------------------------------


def test_frame_helpers_agree_with_generators(reg):
    assert c_frame(reg, 2, 2, 1) == _gen(reg, CF, 1)
    assert c_frame(reg, 2, 2, 3) == _gen(reg, CN, 1)
    assert hatc(reg, 2) == _gen(reg, HC, 2)
    normal = c_dxn(reg, 2, 2)
    assert normal == _gen(reg, CN, 2)
    assert normal * normal == CliffordElement.identity(
        reg, ScalarPoly.const(reg, GR(-1)))


def test_substitute_and_map_coeffs(reg):
    from wresidue.scalars import KIND_CONN
    w = reg.add("w0F", KIND_CONN)
    elem = _gen(reg, CF, 1) * ScalarPoly.var(reg, w)
    bound = elem.substitute({w: GR(3)})
    assert bound == _gen(reg, CF, 1) * ScalarPoly.const(reg, GR(3))
