"""Clifford algebra acting on the twisted spinor fiber.

Generators come in three families over a rank split (p, q):
  * ``c(f_i)``  for i = 1..p   -- squares to -1,
  * ``c(h_s)``  for s = 1..q   -- squares to -1,
  * ``hatc(h_s)`` for s = 1..q -- squares to +1,
and any two distinct generators anticommute.  Products therefore normal-order
to a sign times a strictly increasing word, which keeps elements sparse.

Elements carry ScalarPoly coefficients so symbol calculus and fiber traces
stay exact end to end.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from .scalars import (
    GR_ONE,
    GR_ZERO,
    GaussianRational,
    Registry,
    RegistryMismatchError,
    ScalarPoly,
)

CF = 0  # c(f_i), square -1
CN = 1  # c(h_s), square -1
HC = 2  # hatc(h_s), square +1

_SQ_SIGN = {CF: -1, CN: -1, HC: 1}
_KIND_TEXT = {CF: "c(f{})", CN: "c(h{})", HC: "hc(h{})"}

Generator = tuple  # (kind, index), index starting at 1
Word = tuple  # tuple of generators, strictly increasing


def generator_square_sign(g: Generator) -> int:
    return _SQ_SIGN[g[0]]


def word_mul_letter(word: Word, g: Generator) -> tuple[int, Word]:
    """Multiply a normal-ordered word by one generator on the right."""
    sign = 1
    for pos, letter in enumerate(word):
        if letter == g:
            # move g left to sit beside its copy, then contract the square
            sign *= -1 if (len(word) - 1 - pos) % 2 else 1
            sign *= _SQ_SIGN[g[0]]
            return sign, word[:pos] + word[pos + 1:]
        if letter > g:
            sign *= -1 if (len(word) - pos) % 2 else 1
            return sign, word[:pos] + (g,) + word[pos:]
    return sign, word + (g,)


def word_mul(w1: Word, w2: Word) -> tuple[int, Word]:
    """Product of two normal-ordered words: (sign, normal-ordered word)."""
    sign = 1
    word = w1
    for g in w2:
        s, word = word_mul_letter(word, g)
        sign *= s
    return sign, word


def fiber_dimension(p: int, q: int) -> int:
    """Fiber rank of the twisted spinor bundle the algebra acts on."""
    if p % 2:
        raise ValueError("p must be even")
    return 2 ** (p // 2 + q)


class CliffordElement:
    """Sparse algebra element: {normal-ordered word: ScalarPoly coefficient}."""

    __slots__ = ("registry", "terms")

    def __init__(self, registry: Registry, terms: Mapping[Word, ScalarPoly] | None = None):
        object.__setattr__(self, "registry", registry)
        clean = {}
        if terms:
            for word, coeff in terms.items():
                if coeff.registry is not registry:
                    raise RegistryMismatchError("coefficient over distinct registry")
                if not coeff.is_zero():
                    clean[word] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("CliffordElement is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(registry: Registry) -> "CliffordElement":
        return CliffordElement(registry, {})

    @staticmethod
    def identity(registry: Registry, coeff=None) -> "CliffordElement":
        if coeff is None:
            coeff = ScalarPoly.const(registry, GR_ONE)
        elif isinstance(coeff, (int, Fraction, GaussianRational)):
            coeff = ScalarPoly.const(registry, coeff)
        return CliffordElement(registry, {(): coeff})

    @staticmethod
    def generator(registry: Registry, kind: int, index: int, coeff=None) -> "CliffordElement":
        if kind not in _SQ_SIGN:
            raise ValueError(f"unknown generator kind {kind}")
        if index < 1:
            raise ValueError("generator index starts at 1")
        if coeff is None:
            coeff = ScalarPoly.const(registry, GR_ONE)
        elif isinstance(coeff, (int, Fraction, GaussianRational)):
            coeff = ScalarPoly.const(registry, coeff)
        return CliffordElement(registry, {((kind, index),): coeff})

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "CliffordElement":
        if isinstance(other, CliffordElement):
            if other.registry is not self.registry:
                raise RegistryMismatchError("elements over distinct registries")
            return other
        if isinstance(other, ScalarPoly):
            return CliffordElement(self.registry, {(): other})
        if isinstance(other, (int, Fraction, GaussianRational)):
            return CliffordElement.identity(self.registry, other)
        raise TypeError(f"cannot combine CliffordElement with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for word, coeff in other.terms.items():
            acc = out.get(word)
            acc = coeff if acc is None else acc + coeff
            if acc.is_zero():
                out.pop(word, None)
            else:
                out[word] = acc
        return CliffordElement(self.registry, out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement(self.registry, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, ScalarPoly)):
            if isinstance(other, ScalarPoly) and other.registry is not self.registry:
                raise RegistryMismatchError("coefficient over distinct registry")
            return CliffordElement(
                self.registry, {w: c * other for w, c in self.terms.items()}
            )
        other = self._coerce(other)
        out: dict[Word, ScalarPoly] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                sign, word = word_mul(w1, w2)
                piece = c1 * c2
                if sign < 0:
                    piece = -piece
                acc = out.get(word)
                acc = piece if acc is None else acc + piece
                if acc.is_zero():
                    out.pop(word, None)
                else:
                    out[word] = acc
        return CliffordElement(self.registry, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, ScalarPoly)):
            return self * other
        return self._coerce(other) * self

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.registry is other.registry and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((w, hash(c)) for w, c in self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return not self.is_zero()

    # -- structure ---------------------------------------------------------

    def scalar_part(self) -> ScalarPoly:
        return self.terms.get((), ScalarPoly.zero(self.registry))

    def trace(self, p: int, q: int) -> ScalarPoly:
        """Fiber trace: only the identity word survives, weighted by rank."""
        return self.scalar_part() * fiber_dimension(p, q)

    def product_trace(self, other: "CliffordElement", p: int, q: int) -> ScalarPoly:
        """Trace of ``self * other`` without forming the discarded words.

        Words are normal ordered with strictly increasing letters, so a
        product contributes to the identity word exactly when the two
        words agree; the join below is therefore equivalent to
        ``(self * other).trace(p, q)`` at a fraction of the cost.
        """
        other = self._coerce(other)
        dim = fiber_dimension(p, q)
        small, big = self.terms, other.terms
        if len(big) < len(small):
            small, big = big, small
        acc: ScalarPoly | None = None
        for w, c1 in small.items():
            c2 = big.get(w)
            if c2 is None:
                continue
            sign, rest = word_mul(w, w)
            if rest:
                raise AssertionError("self-product of a word must be scalar")
            piece = c1 * c2 * (sign * dim)
            acc = piece if acc is None else acc + piece
        return acc if acc is not None else ScalarPoly.zero(self.registry)

    def max_word_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def map_coeffs(self, fn: Callable[[ScalarPoly], ScalarPoly]) -> "CliffordElement":
        return CliffordElement(self.registry, {w: fn(c) for w, c in self.terms.items()})

    def substitute(self, bindings) -> "CliffordElement":
        return self.map_coeffs(lambda c: c.substitute(bindings))

    def derivative(self, ind) -> "CliffordElement":
        return self.map_coeffs(lambda c: c.derivative(ind))

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word in sorted(self.terms):
            coeff = self.terms[word]
            letters = ".".join(_KIND_TEXT[k].format(i) for k, i in word)
            if not word:
                parts.append(f"[{coeff.render()}]")
            else:
                parts.append(f"[{coeff.render()}]{letters}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"<CliffordElement {self.render()}>"


# -- frame helpers ---------------------------------------------------------


def frame_generator(p: int, q: int, a: int) -> Generator:
    """Orthonormal-frame index a = 1..p+q to a c-type generator."""
    n = p + q
    if not 1 <= a <= n:
        raise ValueError(f"frame index {a} out of range 1..{n}")
    if a <= p:
        return (CF, a)
    return (CN, a - p)


def c_frame(registry: Registry, p: int, q: int, a: int) -> CliffordElement:
    kind, idx = frame_generator(p, q, a)
    return CliffordElement.generator(registry, kind, idx)


def hatc(registry: Registry, s: int) -> CliffordElement:
    return CliffordElement.generator(registry, HC, s)


def c_dxn(registry: Registry, p: int, q: int) -> CliffordElement:
    """Clifford action of the inward unit conormal (the last frame vector)."""
    return c_frame(registry, p, q, p + q)


def c_xi_prime(registry: Registry, p: int, q: int, xi_inds) -> CliffordElement:
    """Sum of tangential-frame actions weighted by the xi' components."""
    n = p + q
    if len(xi_inds) != n - 1:
        raise ValueError("need one xi component per tangential direction")
    out = CliffordElement.zero(registry)
    for a, ind in enumerate(xi_inds, start=1):
        out = out + c_frame(registry, p, q, a) * ScalarPoly.var(registry, ind)
    return out
