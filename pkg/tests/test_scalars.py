from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wresidue.scalars import (
    GR,
    GR_I,
    GR_ONE,
    GR_ZERO,
    KIND_CONN,
    KIND_MARKER,
    KIND_X,
    MarkerSubstitutionError,
    Registry,
    RegistryMismatchError,
    ScalarPoly,
    minus_i_pow,
)

rationals = st.fractions(min_value=-60, max_value=60, max_denominator=12)
gaussians = st.builds(GR, rationals, rationals)


@given(gaussians, gaussians, gaussians)
def test_gr_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + GR_ZERO == a
    assert a * GR_ONE == a
    assert a - a == GR_ZERO


@given(gaussians)
def test_gr_conjugate_and_division(a):
    norm = a * a.conjugate()
    assert norm.im == 0 and norm.re >= 0
    if not a.is_zero():
        assert a / a == GR_ONE
        assert (GR_ONE / a) * a == GR_ONE


@given(gaussians)
def test_gr_render_parse_roundtrip(a):
    assert GR.parse(a.render()) == a


def test_gr_parse_forms():
    assert GR.parse("0") == GR_ZERO
    assert GR.parse("-3/4") == GR(Fraction(-3, 4))
    assert GR.parse("i") == GR_I
    assert GR.parse("-i") == -GR_I
    assert GR.parse("(1/2-1/3i)") == GR(Fraction(1, 2), Fraction(-1, 3))
    assert GR.parse("3/4i") == GR(0, Fraction(3, 4))


def test_gr_immutable():
    with pytest.raises(AttributeError):
        GR_ONE.re = Fraction(2)


def test_minus_i_pow_cycle():
    assert [minus_i_pow(k) for k in range(4)] == [GR_ONE, -GR_I, -GR_ONE, GR_I]
    assert minus_i_pow(5) == minus_i_pow(1)


def test_gr_i_squares_to_minus_one():
    assert GR_I * GR_I == -GR_ONE


# -- registry ---------------------------------------------------------------


def test_registry_add_and_lookup():
    reg = Registry()
    x = reg.add("X1", KIND_X)
    assert reg.by_name("X1") is x
    assert "X1" in reg and "X2" not in reg
    assert reg.get_or_add("X1", KIND_X) is x
    assert len(reg) == 1


def test_registry_rejects_unknown_kind():
    reg = Registry()
    with pytest.raises(ValueError):
        reg.add("bogus", "no-such-kind")


# -- polynomials ------------------------------------------------------------


@pytest.fixture()
def reg():
    return Registry()


def _vars(reg, count=3):
    return [ScalarPoly.var(reg, reg.get_or_add(f"w{k}F", KIND_CONN))
            for k in range(count)]


def _random_poly(reg, rng, nvars=3):
    inds = [reg.get_or_add(f"w{k}F", KIND_CONN) for k in range(nvars)]
    terms = {}
    for _ in range(rng.randint(0, 4)):
        mono = tuple(sorted((ind.id, rng.randint(1, 2))
                            for ind in rng.sample(inds, rng.randint(0, nvars))))
        terms[mono] = GR(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
    return ScalarPoly(reg, terms)


def test_poly_ring_axioms(reg):
    import random
    rng = random.Random(7)
    for _ in range(300):
        a, b, c = (_random_poly(reg, rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a - a == ScalarPoly.zero(reg)


def test_poly_power_matches_repeated_product(reg):
    x, y, _ = _vars(reg)
    p = x + y * GR(2)
    assert p ** 3 == p * p * p
    assert p ** 0 == ScalarPoly.const(reg, GR_ONE)


def test_poly_registry_mismatch():
    a = ScalarPoly.const(Registry(), GR_ONE)
    b = ScalarPoly.const(Registry(), GR_ONE)
    with pytest.raises(RegistryMismatchError):
        a + b


def test_coefficient_of_and_project(reg):
    x, y, z = _vars(reg)
    xi, yi, zi = (reg.by_name(f"w{k}F") for k in range(3))
    p = x * y * GR(3) + x * z + y * GR(5)
    assert p.coefficient_of({xi: 1, yi: 1}) == ScalarPoly.const(reg, GR(3))
    assert p.coefficient_of({xi: 1, yi: 0}) == z
    groups = p.project([xi])
    assert groups[((xi.id, 1),)] == y * GR(3) + z
    assert groups[()] == y * GR(5)


def test_substitute_exact_and_marker_guard(reg):
    xi = reg.add("w0F", KIND_CONN)
    mark = reg.add("pi", KIND_MARKER)
    p = ScalarPoly.var(reg, xi) * ScalarPoly.var(reg, mark) * GR(2)
    got = p.substitute({xi: GR(Fraction(1, 2))})
    assert got == ScalarPoly.var(reg, mark)
    with pytest.raises(MarkerSubstitutionError):
        p.substitute({mark: GR_ONE})


def test_eval_complex_agrees_with_substitute(reg):
    import random
    rng = random.Random(3)
    for _ in range(50):
        p = _random_poly(reg, rng)
        binding = {reg.by_name(f"w{k}F"): GR(Fraction(rng.randint(-4, 4), 3))
                   for k in range(3)}
        exact = p.substitute(binding).constant_part().to_complex()
        numeric = p.eval_complex({ind.id: complex(v.to_complex())
                                  for ind, v in binding.items()})
        assert abs(exact - numeric) < 1e-9


def test_replace_indeterminate(reg):
    x, y, _ = _vars(reg)
    xi = reg.by_name("w0F")
    p = x * x + x * y
    swapped = p.replace(xi, y * GR(-2))
    assert swapped == y * y * GR(4) + y * y * GR(-2)


def test_zero_coefficients_pruned(reg):
    x, y, _ = _vars(reg)
    assert (x - x).terms == {}
    assert (x + y - y) == x
