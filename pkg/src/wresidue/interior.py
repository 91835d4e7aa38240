"""First-principles route for the closed (boundaryless) functional.

The closed functional of two vector fields decomposes over three universal
ingredients: the quadratic-curvature weight ``v * Tr(Id) / 6`` with
``v = 2*pi**m / Gamma(m)`` the unit-sphere volume in dimension ``n = 2*m``,
the curvature-two-form weight ``v / 2``, and half the trace of the bundle
endomorphism in the Lichnerowicz decomposition of the squared operator.

This module recomputes each ingredient symbolically — fiber traces of the
identity, of the endomorphism built from generic antisymmetric curvature
atoms, and of every term of the connection curvature two-form — and
assembles the coefficients independently of the recorded closed-form
table, which lives in :mod:`wresidue.reference`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .clifford import CF, CN, HC, CliffordElement
from .scalars import GR, KIND_CURV, KIND_CONN, KIND_MARKER, Registry, ScalarPoly


class InteriorSetting:
    """Registry plus generic curvature/connection atoms for one ``(p, q)``."""

    def __init__(self, p: int, q: int):
        if p % 2:
            raise ValueError("distinguished rank must be even")
        self.p = p
        self.q = q
        self.registry = Registry()
        self.scurv = self.registry.add("s", KIND_MARKER, ("scalar-curvature",))
        self._atoms: dict[str, ScalarPoly] = {}

    def var(self, ind) -> ScalarPoly:
        return ScalarPoly.var(self.registry, ind)

    def ident(self, coeff=None) -> CliffordElement:
        return CliffordElement.identity(self.registry, coeff)

    def cf(self, i: int) -> CliffordElement:
        return CliffordElement.generator(self.registry, CF, i)

    def cn(self, s: int) -> CliffordElement:
        return CliffordElement.generator(self.registry, CN, s)

    def hc(self, s: int) -> CliffordElement:
        return CliffordElement.generator(self.registry, HC, s)

    def _atom(self, name: str, kind: str, meta: tuple) -> ScalarPoly:
        if name not in self._atoms:
            ind = self.registry.get_or_add(name, kind, meta)
            self._atoms[name] = self.var(ind)
        return self._atoms[name]

    # curvature pairings; each is antisymmetric in its last two slots, and the
    # one-family / perp-family pairings also in their first two
    def r_mixed(self, i: int, r: int, t: int, s: int) -> ScalarPoly:
        if t == s:
            return ScalarPoly.zero(self.registry)
        sign = 1
        if t > s:
            t, s, sign = s, t, -1
        atom = self._atom(f"Rm{i}{r}{t}{s}", KIND_CURV, ("curvature-mixed", i, r, t, s))
        return atom * GR(sign)

    def _pairwise(self, tag: str, label: str, a: int, b: int, t: int, s: int) -> ScalarPoly:
        if a == b or t == s:
            return ScalarPoly.zero(self.registry)
        sign = 1
        if a > b:
            a, b, sign = b, a, -sign
        if t > s:
            t, s, sign = s, t, -sign
        atom = self._atom(f"{tag}{a}{b}{t}{s}", KIND_CURV, (label, a, b, t, s))
        return atom * GR(sign)

    def r_leaf(self, i: int, j: int, t: int, s: int) -> ScalarPoly:
        return self._pairwise("Rf", "curvature-leaf-pair", i, j, t, s)

    def r_perp(self, r: int, u: int, t: int, s: int) -> ScalarPoly:
        return self._pairwise("Rp", "curvature-perp-pair", r, u, t, s)

    # connection-term atoms for one direction tag; the two quadratic families
    # are antisymmetric, the mixing family is not
    def conn_leaf(self, tag: str, j: int, l: int) -> ScalarPoly:
        if j == l:
            return ScalarPoly.zero(self.registry)
        sign = 1
        if j > l:
            j, l, sign = l, j, -1
        atom = self._atom(f"w{tag}F{j}{l}", KIND_CONN, ("interior-leaf", tag, j, l))
        return atom * GR(sign)

    def conn_perp(self, tag: str, s: int, t: int) -> ScalarPoly:
        if s == t:
            return ScalarPoly.zero(self.registry)
        sign = 1
        if s > t:
            s, t, sign = t, s, -1
        atom = self._atom(f"w{tag}P{s}{t}", KIND_CONN, ("interior-perp", tag, s, t))
        return atom * GR(sign)

    def conn_mix(self, tag: str, j: int, s: int) -> ScalarPoly:
        return self._atom(f"w{tag}S{j}{s}", KIND_CONN, ("interior-mix", tag, j, s))

    def connection_term(self, tag: str) -> CliffordElement:
        """Generic connection-form value: quarter-weighted quadratic families
        plus the half-weighted mixing family."""
        out = CliffordElement.zero(self.registry)
        quarter = GR(Fraction(1, 4))
        for j in range(1, self.p + 1):
            for l in range(1, self.p + 1):
                co = self.conn_leaf(tag, j, l)
                if co:
                    out = out + self.cf(j) * self.cf(l) * (co * quarter)
        for s in range(1, self.q + 1):
            for t in range(1, self.q + 1):
                co = self.conn_perp(tag, s, t)
                if co:
                    out = out + (self.cn(s) * self.cn(t) - self.hc(s) * self.hc(t)) * (co * quarter)
        for j in range(1, self.p + 1):
            for s in range(1, self.q + 1):
                co = self.conn_mix(tag, j, s)
                if co:
                    out = out + self.cf(j) * self.cn(s) * (co * GR(Fraction(1, 2)))
        return out


def endomorphism_blocks(setting: InteriorSetting) -> dict[str, CliffordElement]:
    """The endomorphism of the squared operator: scalar-curvature part plus
    three quarter-weighted curvature blocks."""
    p, q = setting.p, setting.q
    quarter = GR(Fraction(1, 4))
    scalar = setting.ident(setting.var(setting.scurv) * quarter)

    mixed = CliffordElement.zero(setting.registry)
    for i in range(1, p + 1):
        for r in range(1, q + 1):
            for t in range(1, q + 1):
                for s in range(1, q + 1):
                    co = setting.r_mixed(i, r, t, s)
                    if co:
                        mixed = mixed + (setting.cf(i) * setting.cn(r)
                                         * setting.hc(s) * setting.hc(t)) * (co * quarter)

    leaf = CliffordElement.zero(setting.registry)
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            for t in range(1, q + 1):
                for s in range(1, q + 1):
                    co = setting.r_leaf(i, j, t, s)
                    if co:
                        leaf = leaf + (setting.cf(i) * setting.cf(j)
                                       * setting.hc(s) * setting.hc(t)) * (co * quarter)

    perp = CliffordElement.zero(setting.registry)
    for r in range(1, q + 1):
        for u in range(1, q + 1):
            for t in range(1, q + 1):
                for s in range(1, q + 1):
                    co = setting.r_perp(r, u, t, s)
                    if co:
                        perp = perp + (setting.cn(r) * setting.cn(u)
                                       * setting.hc(s) * setting.hc(t)) * (co * quarter)

    return {"scalar": scalar, "mixed-pair": mixed, "leaf-pair": leaf, "perp-pair": perp}


def trace_identity(p: int, q: int) -> Fraction:
    setting = InteriorSetting(p, q)
    return setting.ident().trace(p, q).constant_part().re


def trace_endomorphism(p: int, q: int) -> tuple[Fraction, dict[str, ScalarPoly]]:
    """Coefficient of the scalar-curvature marker in the endomorphism trace,
    together with the per-block traces (the curvature blocks must all trace
    to zero)."""
    setting = InteriorSetting(p, q)
    blocks = endomorphism_blocks(setting)
    traces = {name: el.trace(p, q) for name, el in blocks.items()}
    total = ScalarPoly.zero(setting.registry)
    for tr in traces.values():
        total = total + tr
    co = total.coefficient_of({setting.scurv: 1})
    if not co.is_constant():
        raise ValueError("endomorphism trace is not a pure scalar-curvature multiple")
    rest = total - ScalarPoly.var(setting.registry, setting.scurv) * co
    if not rest.is_zero():
        raise ValueError("endomorphism trace has terms beyond the scalar-curvature part")
    return co.constant_part().re, traces


def curvature_form_traces(p: int, q: int) -> dict[str, ScalarPoly]:
    """Fiber traces of every term of the connection curvature two-form.

    The derivative terms and the bracket term are connection-form values with
    fresh atom families, so their traces vanish term by term; the commutator
    trace vanishes by cyclicity.  All four must be the zero polynomial.
    """
    setting = InteriorSetting(p, q)
    a = setting.connection_term("a")
    b = setting.connection_term("b")
    da = setting.connection_term("Da")   # direction-a derivative of the b-form
    db = setting.connection_term("Db")
    br = setting.connection_term("L")    # value on the frame bracket
    return {
        "derivative-forward": da.trace(p, q),
        "derivative-backward": db.trace(p, q),
        "commutator": (a * b - b * a).trace(p, q),
        "frame-bracket": br.trace(p, q),
    }


@dataclass(frozen=True)
class InteriorCoefficients:
    """Exact coefficients: the quadratic-form weight as a rational multiple
    of ``pi**(n/2)``, the metric scalar-curvature weight, the two-form
    weight, and the endomorphism-trace multiple of the curvature marker."""

    einstein: Fraction
    scalar: Fraction
    two_form: Fraction
    endo_trace: Fraction


def first_principles_coefficients(p: int, q: int, n: int) -> InteriorCoefficients:
    if n % 2:
        raise ValueError("only even total dimension is supported")
    m = n // 2
    tr_id = trace_identity(p, q)
    endo_co, _ = trace_endomorphism(p, q)
    flat = curvature_form_traces(p, q)
    if any(not tr.is_zero() for tr in flat.values()):
        raise ValueError("connection curvature two-form has nonzero fiber trace")
    # sphere volume 2*pi**m/Gamma(m); pi**m stays implicit in the field
    gamma_m = Fraction(math.factorial(m - 1))
    return InteriorCoefficients(
        einstein=Fraction(2) * tr_id / (6 * gamma_m),
        scalar=endo_co / 2,
        two_form=Fraction(0),
        endo_trace=endo_co,
    )
