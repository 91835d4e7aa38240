"""Rational calculus in the normal covariable over Clifford coefficients.

Elements are quotients ``N(xn) / ((xn - i)^a (xn + i)^b)`` where the
numerator ``N`` is a polynomial in the distinguished variable ``xn`` with
:class:`~wresidue.clifford.CliffordElement` coefficients.  The class keeps
a canonical form (neither linear factor divides the numerator), exposes
d/dxn, Laurent data at the two poles, the half-plane projections pi+ and
pi-, and the contour integral over the real line as ``2*pi*i`` times the
residue at ``+i``.  A quadrature-based oracle mirrors the exact integral
numerically.
"""

from __future__ import annotations

import math
from typing import Callable, Mapping

from .clifford import CliffordElement, fiber_dimension
from .scalars import (
    GR,
    GR_I,
    GR_ONE,
    GaussianRational,
    Indeterminate,
    Registry,
    ScalarPoly,
)

NumDict = dict[int, CliffordElement]


class InsufficientDecayError(ValueError):
    """Raised when an integrand does not vanish fast enough at infinity."""


def _coerce_cliff(registry: Registry, value) -> CliffordElement:
    if isinstance(value, CliffordElement):
        return value
    if isinstance(value, ScalarPoly):
        return CliffordElement.identity(registry, value)
    return CliffordElement.identity(registry, ScalarPoly.const(registry, value))


def _clean(num: Mapping[int, CliffordElement]) -> NumDict:
    return {m: c for m, c in num.items() if not c.is_zero()}


def _horner(num: NumDict, registry: Registry, c: GaussianRational) -> CliffordElement:
    acc = CliffordElement.zero(registry)
    for m in range(max(num, default=0), -1, -1):
        acc = acc * c if acc else acc
        if m in num:
            acc = acc + num[m]
    return acc


def _synthetic_div(num: NumDict, registry: Registry, c: GaussianRational) -> NumDict:
    """Divide by (xn - c); remainder must vanish (checked by the caller)."""
    quot: NumDict = {}
    carry = CliffordElement.zero(registry)
    for m in range(max(num, default=0), 0, -1):
        carry = carry * c + num.get(m, CliffordElement.zero(registry)) if carry else num.get(m, CliffordElement.zero(registry))
        if carry:
            quot[m - 1] = carry
    return quot


def _num_mul_linear(num: NumDict, registry: Registry, c: GaussianRational) -> NumDict:
    """Multiply the numerator by (xn - c)."""
    out: NumDict = {}
    for m, coeff in num.items():
        out[m + 1] = out.get(m + 1, CliffordElement.zero(registry)) + coeff
        out[m] = out.get(m, CliffordElement.zero(registry)) - coeff * c
    return _clean(out)


class XiRational:
    """Canonical quotient of a Clifford-coefficient polynomial by powers
    of ``(xn - i)`` and ``(xn + i)``."""

    __slots__ = ("registry", "num", "a", "b")

    def __init__(self, registry: Registry, num: Mapping[int, CliffordElement] | None = None,
                 a: int = 0, b: int = 0):
        if a < 0 or b < 0:
            raise ValueError("pole orders must be nonnegative")
        cleaned = _clean(num or {})
        # canonical form: strip linear factors shared with the denominator
        while cleaned and a > 0 and _horner(cleaned, registry, GR_I).is_zero():
            cleaned = _synthetic_div(cleaned, registry, GR_I)
            a -= 1
        while cleaned and b > 0 and _horner(cleaned, registry, -GR_I).is_zero():
            cleaned = _synthetic_div(cleaned, registry, -GR_I)
            b -= 1
        if not cleaned:
            a = b = 0
        object.__setattr__(self, "registry", registry)
        object.__setattr__(self, "num", cleaned)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("XiRational is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(registry: Registry) -> "XiRational":
        return XiRational(registry, {})

    @staticmethod
    def from_cliff(value: CliffordElement) -> "XiRational":
        return XiRational(value.registry, {0: value})

    @staticmethod
    def const(registry: Registry, value) -> "XiRational":
        return XiRational(registry, {0: _coerce_cliff(registry, value)})

    @staticmethod
    def build(registry: Registry, num: Mapping[int, object], a: int = 0, b: int = 0) -> "XiRational":
        """Numerator entries may be Clifford elements, scalar polys, or numbers."""
        return XiRational(registry, {m: _coerce_cliff(registry, v) for m, v in num.items()}, a, b)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return not self.is_zero()

    def degree(self) -> int:
        """Numerator degree in xn (-1 for the zero element)."""
        return max(self.num, default=-1)

    def __eq__(self, other):
        if not isinstance(other, XiRational):
            return NotImplemented
        return (self.a, self.b, self.num) == (other.a, other.b, other.num)

    def __hash__(self):
        return hash((self.a, self.b, tuple(sorted((m, hash(c)) for m, c in self.num.items()))))

    # -- ring operations ---------------------------------------------------

    def _aligned(self, other: "XiRational") -> tuple[NumDict, NumDict, int, int]:
        a, b = max(self.a, other.a), max(self.b, other.b)
        n1, n2 = dict(self.num), dict(other.num)
        for _ in range(a - self.a):
            n1 = _num_mul_linear(n1, self.registry, GR_I)
        for _ in range(b - self.b):
            n1 = _num_mul_linear(n1, self.registry, -GR_I)
        for _ in range(a - other.a):
            n2 = _num_mul_linear(n2, self.registry, GR_I)
        for _ in range(b - other.b):
            n2 = _num_mul_linear(n2, self.registry, -GR_I)
        return n1, n2, a, b

    def __add__(self, other):
        if not isinstance(other, XiRational):
            other = XiRational.const(self.registry, other)
        n1, n2, a, b = self._aligned(other)
        out = dict(n1)
        for m, c in n2.items():
            out[m] = out.get(m, CliffordElement.zero(self.registry)) + c
        return XiRational(self.registry, out, a, b)

    __radd__ = __add__

    def __neg__(self):
        return XiRational(self.registry, {m: -c for m, c in self.num.items()}, self.a, self.b)

    def __sub__(self, other):
        return self + (-other if isinstance(other, XiRational) else -XiRational.const(self.registry, other))

    def __rsub__(self, other):
        return XiRational.const(self.registry, other) - self

    def __mul__(self, other):
        """Product; numerator coefficients multiply in left-to-right order."""
        if not isinstance(other, XiRational):
            return self.scale_right(other)
        out: NumDict = {}
        for m1, c1 in self.num.items():
            for m2, c2 in other.num.items():
                prod = c1 * c2
                if prod:
                    key = m1 + m2
                    out[key] = out.get(key, CliffordElement.zero(self.registry)) + prod
        return XiRational(self.registry, out, self.a + other.a, self.b + other.b)

    def __rmul__(self, other):
        return self.scale_left(other)

    def scale_left(self, value) -> "XiRational":
        c = _coerce_cliff(self.registry, value)
        return XiRational(self.registry, {m: c * v for m, v in self.num.items()}, self.a, self.b)

    def scale_right(self, value) -> "XiRational":
        c = _coerce_cliff(self.registry, value)
        return XiRational(self.registry, {m: v * c for m, v in self.num.items()}, self.a, self.b)

    def map_coeffs(self, fn: Callable[[CliffordElement], CliffordElement]) -> "XiRational":
        return XiRational(self.registry, {m: fn(c) for m, c in self.num.items()}, self.a, self.b)

    def coeff_derivative(self, ind: Indeterminate) -> "XiRational":
        """Derivative in an ordinary (non-xn) indeterminate of the coefficients."""
        return self.map_coeffs(lambda c: c.derivative(ind))

    def substitute(self, bindings) -> "XiRational":
        return self.map_coeffs(lambda c: c.substitute(bindings))

    def trace(self, p: int, q: int) -> "XiRational":
        reg = self.registry
        return self.map_coeffs(lambda c: CliffordElement.identity(reg, c.trace(p, q)))

    def product_trace(self, other: "XiRational", p: int, q: int) -> "XiRational":
        """Equivalent of ``(self * other).trace(p, q)`` via the word join."""
        reg = self.registry
        acc: dict[int, ScalarPoly] = {}
        for m1, c1 in self.num.items():
            for m2, c2 in other.num.items():
                piece = c1.product_trace(c2, p, q)
                if piece.is_zero():
                    continue
                key = m1 + m2
                prev = acc.get(key)
                acc[key] = piece if prev is None else prev + piece
        out = {m: CliffordElement.identity(reg, s) for m, s in acc.items()}
        return XiRational(reg, out, self.a + other.a, self.b + other.b)

    # -- calculus ----------------------------------------------------------

    def xi_derivative(self) -> "XiRational":
        reg = self.registry
        dnum: NumDict = {}
        for m, c in self.num.items():
            if m > 0:
                dnum[m - 1] = dnum.get(m - 1, CliffordElement.zero(reg)) + c * GR(m)
        # d(N u^-a v^-b) = (N' u v - a N v - b N u) u^-(a+1) v^-(b+1)
        term = _num_mul_linear(_num_mul_linear(dnum, reg, GR_I), reg, -GR_I)
        if self.a:
            nv = _num_mul_linear(self.num, reg, -GR_I)
            for m, c in nv.items():
                term[m] = term.get(m, CliffordElement.zero(reg)) - c * GR(self.a)
        if self.b:
            nu = _num_mul_linear(self.num, reg, GR_I)
            for m, c in nu.items():
                term[m] = term.get(m, CliffordElement.zero(reg)) - c * GR(self.b)
        return XiRational(reg, term, self.a + 1, self.b + 1)

    def laurent(self, at_plus: bool, upto: int = 0) -> dict[int, CliffordElement]:
        """Laurent coefficients in t = xn -+ i, from the pole order up to ``upto``."""
        reg = self.registry
        center = GR_I if at_plus else -GR_I
        far = GR(0, 2) if at_plus else GR(0, -2)  # value of the other linear factor
        own, other = (self.a, self.b) if at_plus else (self.b, self.a)
        deg = self.degree()
        shifted: NumDict = {}
        for k in range(deg + 1):
            acc = CliffordElement.zero(reg)
            for m in range(k, deg + 1):
                if m in self.num:
                    acc = acc + self.num[m] * (GR(math.comb(m, k)) * center ** (m - k))
            if acc:
                shifted[k] = acc
        out: dict[int, CliffordElement] = {}
        for j in range(-own, upto + 1):
            acc = CliffordElement.zero(reg)
            for k, coeff in shifted.items():
                s = j + own - k
                if s < 0:
                    continue
                e = GR((-1) ** s * math.comb(other + s - 1, s)) * far ** (-other - s) if other else (
                    GR_ONE if s == 0 else None)
                if e is None:
                    continue
                acc = acc + coeff * e
            if acc:
                out[j] = acc
        return out

    def pi_plus(self) -> "XiRational":
        """Principal part at +i (the positive half-plane projection)."""
        return self._principal(at_plus=True)

    def pi_minus(self) -> "XiRational":
        """Principal part at -i."""
        return self._principal(at_plus=False)

    def _principal(self, at_plus: bool) -> "XiRational":
        reg = self.registry
        own = self.a if at_plus else self.b
        if own == 0:
            return XiRational.zero(reg)
        center = GR_I if at_plus else -GR_I
        series = self.laurent(at_plus, upto=-1)
        # sum_j c_{-j} (xn - c)^(own - j), assembled over the single-pole denominator
        out: NumDict = {}
        for j, coeff in series.items():
            power = own + j  # j is negative: exponent of (xn - c) in the numerator
            for k in range(power + 1):
                e = GR(math.comb(power, k)) * (-center) ** (power - k)
                out[k] = out.get(k, CliffordElement.zero(reg)) + coeff * e
        if at_plus:
            return XiRational(reg, out, own, 0)
        return XiRational(reg, out, 0, own)

    def polynomial_part(self) -> NumDict:
        """Quotient of the numerator by the full denominator (xn-polynomial)."""
        reg = self.registry
        rem = dict(self.num)
        for _ in range(self.a):
            rem = _strip_root(rem, reg, GR_I)
        for _ in range(self.b):
            rem = _strip_root(rem, reg, -GR_I)
        return _clean(rem)

    def residue_at_plus_i(self) -> CliffordElement:
        return self.laurent(True, upto=-1).get(-1, CliffordElement.zero(self.registry))

    def integrate(self, pi_ind: Indeterminate) -> CliffordElement:
        """Real-line integral, closing the contour in the upper half plane.

        Requires numerator degree <= a + b - 2; the result carries the
        supplied symbolic pi marker as a factor.
        """
        if self.is_zero():
            return CliffordElement.zero(self.registry)
        if self.degree() > self.a + self.b - 2:
            raise InsufficientDecayError(
                f"degree {self.degree()} with pole orders ({self.a},{self.b})")
        res = self.residue_at_plus_i()
        pi_factor = ScalarPoly.var(self.registry, pi_ind) * GR(0, 2)
        return res * pi_factor

    # -- numeric evaluation ------------------------------------------------

    def scalar_part(self) -> "XiRational":
        return self.map_coeffs(lambda c: CliffordElement.identity(self.registry, c.scalar_part()))

    def eval_scalar_complex(self, xn: complex, bindings: Mapping[int, complex] | None = None) -> complex:
        """Evaluate the identity-word component at a numeric point."""
        bindings = bindings or {}
        num = 0j
        for m, c in self.num.items():
            for word in c.terms:
                if word:
                    raise ValueError("numeric evaluation needs an identity-word element")
            num += c.scalar_part().eval_complex(bindings) * xn ** m
        return num / ((xn - 1j) ** self.a * (xn + 1j) ** self.b)

    def render(self) -> str:
        if not self.num:
            return "0"
        parts = []
        for m in sorted(self.num):
            head = "" if m == 0 else ("xn" if m == 1 else f"xn^{m}")
            parts.append(f"({self.num[m].render()}){head}" if head else f"({self.num[m].render()})")
        body = " + ".join(parts)
        denom = []
        if self.a:
            denom.append(f"(xn-i)^{self.a}" if self.a > 1 else "(xn-i)")
        if self.b:
            denom.append(f"(xn+i)^{self.b}" if self.b > 1 else "(xn+i)")
        return f"[{body}] / {''.join(denom)}" if denom else body

    __str__ = render

    def __repr__(self):
        return f"<XiRational {self.render()}>"


def _strip_root(num: NumDict, registry: Registry, c: GaussianRational) -> NumDict:
    """One long-division step by (xn - c), discarding the remainder."""
    return _synthetic_div(num, registry, c)


# -- module-level operation names ------------------------------------------


def xi_derivative(f: XiRational, order: int = 1) -> XiRational:
    for _ in range(order):
        f = f.xi_derivative()
    return f


def pi_plus(f: XiRational) -> XiRational:
    return f.pi_plus()


def pi_minus(f: XiRational) -> XiRational:
    return f.pi_minus()


def xi_integral(f: XiRational, pi_ind: Indeterminate) -> CliffordElement:
    return f.integrate(pi_ind)


def numeric_xi_oracle(f: XiRational, bindings: Mapping[int, complex] | None = None) -> complex:
    """Adaptive quadrature of the identity-word component over the real line."""
    from scipy.integrate import quad

    def real_part(x: float) -> float:
        return f.eval_scalar_complex(x, bindings).real

    def imag_part(x: float) -> float:
        return f.eval_scalar_complex(x, bindings).imag

    re, _ = quad(real_part, -math.inf, math.inf, epsabs=1e-12, epsrel=1e-12, limit=400)
    im, _ = quad(imag_part, -math.inf, math.inf, epsabs=1e-12, epsrel=1e-12, limit=400)
    return complex(re, im)
