"""Exact differential polynomial algebra in one generator.

A :class:`DiffPoly` is a polynomial in ``u, u', u'', ...`` (the generator is
either the pseudo-torsion ``t`` or the pseudo-curvature ``k``) whose
coefficients are polynomials with rational coefficients in the formal
constant ``G``.  All arithmetic is exact.

Internally a term is keyed by ``(monomial, g_exponent)`` where ``monomial``
is a dense tuple of exponents indexed by derivative order with trailing
zeros stripped, so ``()`` is the constant monomial and ``(1, 2)`` is
``u * u'^2``.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

import numpy as np

__all__ = [
    "Generator",
    "TAU",
    "KAPPA",
    "Coefficient",
    "DiffMonomial",
    "DiffPoly",
    "GeneratorMismatch",
    "NotTotalDerivative",
    "total_derivative",
    "evolution_derivation",
    "frechet",
    "commutator",
    "variational_derivative",
    "antiderivative",
    "partial",
]


class Generator(enum.Enum):
    TAU = "t"
    KAPPA = "k"

    @property
    def letter(self) -> str:
        return self.value


TAU = Generator.TAU
KAPPA = Generator.KAPPA


class GeneratorMismatch(ValueError):
    """Raised when two differential polynomials over different generators meet."""


class NotTotalDerivative(ArithmeticError):
    """Raised when an antiderivative inside the polynomial algebra does not exist."""


Scalar = Union[int, Fraction, Rational]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class Coefficient:
    """Polynomial in ``G`` with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            if e < 0:
                raise ValueError("G exponents must be non-negative")
            c = _as_fraction(c)
            if c:
                clean[int(e)] = c
        self._terms = tuple(sorted(clean.items()))
        self._hash = None

    @classmethod
    def of(cls, x) -> "Coefficient":
        if isinstance(x, Coefficient):
            return x
        return cls({0: x})

    @classmethod
    def G(cls, power: int = 1) -> "Coefficient":
        return cls({power: 1})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(e == 0 for e, _ in self._terms)

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} depends on G")
        return self._terms[0][1] if self._terms else Fraction(0)

    def evaluate(self, G):
        """Value at a concrete ``G`` (exact if ``G`` is rational, else float)."""
        total = 0
        for e, c in self._terms:
            total += c * G**e
        return total

    def __add__(self, other):
        other = Coefficient.of(other)
        out = dict(self._terms)
        for e, c in other._terms:
            out[e] = out.get(e, 0) + c
        return Coefficient(out)

    __radd__ = __add__

    def __neg__(self):
        return Coefficient({e: -c for e, c in self._terms})

    def __sub__(self, other):
        return self + (-Coefficient.of(other))

    def __rsub__(self, other):
        return Coefficient.of(other) - self

    def __mul__(self, other):
        if isinstance(other, DiffPoly):
            return NotImplemented
        other = Coefficient.of(other)
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Coefficient(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Coefficient):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Coefficient.of(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"Coefficient({dict(self._terms)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        return str(DiffPoly({((), e): c for e, c in self._terms}, TAU))


class DiffMonomial(tuple):
    """Exponent vector indexed by derivative order, trailing zeros stripped."""

    def __new__(cls, exponents: Iterable[int] = ()):
        exps = list(exponents)
        while exps and exps[-1] == 0:
            exps.pop()
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")
        return super().__new__(cls, exps)

    @classmethod
    def from_map(cls, exponents: Mapping[int, int]) -> "DiffMonomial":
        if not exponents:
            return cls()
        vec = [0] * (max(exponents) + 1)
        for m, e in exponents.items():
            vec[m] = e
        return cls(vec)

    def as_map(self) -> dict[int, int]:
        return {m: e for m, e in enumerate(self) if e}

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def order(self) -> int:
        """Top derivative order present, ``-1`` for the constant monomial."""
        return len(self) - 1


def _strip(exps: list[int]) -> tuple[int, ...]:
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    out = list(a)
    for i, e in enumerate(b):
        out[i] += e
    return tuple(out)


def mono_sort_key(mono: tuple) -> tuple:
    return (sum(mono), mono)


def _coerce_scalar(x) -> dict:
    """Scalar (int, Fraction, Coefficient) as a term dict on the constant monomial."""
    if isinstance(x, Coefficient):
        return {((), e): c for e, c in x._terms}
    c = _as_fraction(x)
    return {((), 0): c} if c else {}


class DiffPoly:
    """Immutable element of the differential algebra over one generator.

    Equal values compare equal structurally and hash alike.  Arithmetic with
    ``int``, ``Fraction`` and :class:`Coefficient` scalars is supported;
    mixing generators raises :class:`GeneratorMismatch`.
    """

    __slots__ = ("_terms", "_gen", "_hash")

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None, generator: Generator = TAU):
        self._gen = Generator(generator)
        self._terms = {}
        self._hash = None
        for key, c in (terms or {}).items():
            mono, e = key
            if not isinstance(c, Fraction):
                c = _as_fraction(c)
            if c:
                self._terms[(_strip(list(mono)), e)] = c

    @classmethod
    def _raw(cls, terms: dict, generator: Generator) -> "DiffPoly":
        # trusted constructor: keys canonical, values nonzero Fractions
        p = object.__new__(cls)
        p._terms = terms
        p._gen = generator
        p._hash = None
        return p

    # construction helpers
    @classmethod
    def var(cls, order: int = 0, generator: Generator = TAU) -> "DiffPoly":
        return cls._raw({(tuple([0] * order + [1]), 0): Fraction(1)}, Generator(generator))

    @classmethod
    def const(cls, value, generator: Generator = TAU) -> "DiffPoly":
        return cls._raw(_coerce_scalar(value), Generator(generator))

    @classmethod
    def zero(cls, generator: Generator = TAU) -> "DiffPoly":
        return cls._raw({}, Generator(generator))

    @classmethod
    def G(cls, generator: Generator = TAU) -> "DiffPoly":
        return cls._raw({((), 1): Fraction(1)}, Generator(generator))

    @classmethod
    def from_terms(cls, terms: Mapping[DiffMonomial, Coefficient], generator: Generator = TAU) -> "DiffPoly":
        flat = {}
        for mono, coeff in terms.items():
            for e, c in Coefficient.of(coeff)._terms:
                flat[(tuple(mono), e)] = c
        return cls(flat, generator)

    # inspection
    @property
    def generator(self) -> Generator:
        return self._gen

    @property
    def terms(self) -> dict[DiffMonomial, Coefficient]:
        grouped: dict[tuple, dict[int, Fraction]] = {}
        for (mono, e), c in self._terms.items():
            grouped.setdefault(mono, {})[e] = c
        return {DiffMonomial(m): Coefficient(cs) for m, cs in grouped.items()}

    def items(self) -> Iterator[tuple[tuple, int, Fraction]]:
        """Iterate ``(monomial, g_exponent, rational)`` in canonical order."""
        for (mono, e) in sorted(self._terms, key=lambda k: (mono_sort_key(k[0]), k[1])):
            yield mono, e, self._terms[(mono, e)]

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> Coefficient:
        return Coefficient({e: c for (mono, e), c in self._terms.items() if not mono})

    def is_constant(self) -> bool:
        return all(not mono for mono, _ in self._terms)

    def in_P0(self) -> bool:
        return self.constant_term().is_zero()

    @property
    def order(self) -> int:
        """Top derivative order present; ``-1`` for constants (including zero)."""
        return max((len(mono) - 1 for mono, _ in self._terms), default=-1)

    @property
    def degree(self) -> int:
        return max((sum(mono) for mono, _ in self._terms), default=0)

    def __len__(self):
        return len(self._terms)

    # arithmetic
    def _check(self, other: "DiffPoly"):
        if other._gen is not self._gen:
            raise GeneratorMismatch(f"{self._gen.name} vs {other._gen.name}")

    def _lift(self, other) -> "DiffPoly":
        if isinstance(other, DiffPoly):
            self._check(other)
            return other
        return DiffPoly._raw(_coerce_scalar(other), self._gen)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v += c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return DiffPoly._raw(out, self._gen)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly._raw({k: -c for k, c in self._terms.items()}, self._gen)

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        for (m1, e1), c1 in self._terms.items():
            for (m2, e2), c2 in other._terms.items():
                k = (_mono_mul(m1, m2), e1 + e2)
                v = out.get(k)
                out[k] = c1 * c2 if v is None else v + c1 * c2
        return DiffPoly._raw({k: v for k, v in out.items() if v}, self._gen)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = DiffPoly.const(1, self._gen)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, DiffPoly):
            return self._gen is other._gen and self._terms == other._terms
        if isinstance(other, (int, Fraction, Coefficient)):
            return self._terms == _coerce_scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._gen, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"DiffPoly({self.format()!r}, {self._gen.name})"

    def __str__(self):
        return self.format()

    def format(self) -> str:
        from .expr import format_poly

        return format_poly(self)

    # scalar-level manipulations
    def map_coefficients(self, fn) -> "DiffPoly":
        return DiffPoly({k: fn(c) for k, c in self._terms.items()}, self._gen)

    def substitute_G(self, value) -> "DiffPoly":
        """Replace the formal constant ``G`` by an exact rational value."""
        value = _as_fraction(value)
        out: dict = {}
        for (mono, e), c in self._terms.items():
            k = (mono, 0)
            out[k] = out.get(k, 0) + c * value**e
        return DiffPoly(out, self._gen)

    def coefficient_of(self, monomial) -> Coefficient:
        mono = _strip(list(monomial))
        return Coefficient({e: c for (m, e), c in self._terms.items() if m == mono})

    def evaluate(self, jets, G=0.0):
        """Evaluate on numeric jets: ``jets[m]`` holds samples of ``u^(m)``."""
        total = np.zeros_like(np.asarray(jets[0], dtype=float))
        for (mono, e), c in self._terms.items():
            term = float(c) * G**e
            for m, p in enumerate(mono):
                if p:
                    term = term * np.asarray(jets[m], dtype=float) ** p
            total = total + term
        return total

    def with_generator(self, generator: Generator) -> "DiffPoly":
        """Same coefficients read over another generator (``t^(m)`` -> ``k^(m)``)."""
        return DiffPoly._raw(dict(self._terms), Generator(generator))


# ----------------------------------------------------------------------------
# derivations


def _check_pair(a: DiffPoly, b: DiffPoly):
    if a._gen is not b._gen:
        raise GeneratorMismatch(f"{a._gen.name} vs {b._gen.name}")


def partial(p: DiffPoly, m: int) -> DiffPoly:
    """Partial derivative with respect to the variable ``u^(m)``."""
    out: dict = {}
    for (mono, e), c in p._terms.items():
        if m < len(mono) and mono[m]:
            exps = list(mono)
            k = exps[m]
            exps[m] -= 1
            key = (_strip(exps), e)
            v = out.get(key, 0) + c * k
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return DiffPoly._raw(out, p._gen)


def total_derivative(p: DiffPoly) -> DiffPoly:
    """``D = sum_m u^(m+1) d/du^(m)``."""
    out: dict = {}
    for (mono, e), c in p._terms.items():
        n = len(mono)
        for m in range(n):
            k = mono[m]
            if not k:
                continue
            exps = list(mono)
            exps[m] -= 1
            if m + 1 < n:
                exps[m + 1] += 1
            else:
                exps.append(1)
            key = (_strip(exps), e)
            v = out.get(key, 0) + c * k
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return DiffPoly._raw(out, p._gen)


def total_derivatives(p: DiffPoly, count: int) -> list[DiffPoly]:
    """``[p, Dp, ..., D^count p]``."""
    out = [p]
    for _ in range(count):
        out.append(total_derivative(out[-1]))
    return out


def evolution_derivation(a: DiffPoly, p: DiffPoly) -> DiffPoly:
    """``d_a(p) = sum_m D^m(a) * dp/du^(m)``."""
    _check_pair(a, p)
    top = p.order
    if top < 0:
        return DiffPoly.zero(p._gen)
    jets = total_derivatives(a, top)
    result = DiffPoly.zero(p._gen)
    for m in range(top + 1):
        dp = partial(p, m)
        if dp:
            result = result + jets[m] * dp
    return result


def frechet(a: DiffPoly, b: DiffPoly) -> DiffPoly:
    """Frechet derivative ``a'[b] = d/de a(u + e b)`` at ``e = 0``."""
    return evolution_derivation(b, a)


def commutator(a: DiffPoly, b: DiffPoly) -> DiffPoly:
    """``[a, b] = d_a b - d_b a``."""
    _check_pair(a, b)
    return evolution_derivation(a, b) - evolution_derivation(b, a)


def variational_derivative(p: DiffPoly) -> DiffPoly:
    """Euler operator ``E(p) = sum_m (-D)^m dp/du^(m)``."""
    result = DiffPoly.zero(p._gen)
    for m in range(p.order + 1):
        term = partial(p, m)
        for _ in range(m):
            term = total_derivative(term)
        result = result + term if m % 2 == 0 else result - term
    return result


def _integrate_in(p: DiffPoly, m: int) -> DiffPoly:
    """Ordinary antiderivative with respect to the variable ``u^(m)``."""
    out = {}
    for (mono, e), c in p._terms.items():
        exps = list(mono) + [0] * max(0, m + 1 - len(mono))
        exps[m] += 1
        out[(_strip(exps), e)] = c / exps[m]
    return DiffPoly._raw(out, p._gen)


def antiderivative(p: DiffPoly) -> DiffPoly:
    """Return the unique ``q`` with zero constant term such that ``D(q) = p``.

    Raises :class:`NotTotalDerivative` when ``p`` is not in the image of ``D``.
    """
    if not p.in_P0():
        raise NotTotalDerivative(f"{p} has a nonzero constant term")
    if variational_derivative(p):
        raise NotTotalDerivative(f"E({p}) != 0")
    q = DiffPoly.zero(p._gen)
    rest = p
    while rest:
        top = rest.order
        if top < 1:
            raise NotTotalDerivative(f"residual {rest} has order {top}")
        lead = {}
        for (mono, e), c in rest._terms.items():
            if len(mono) - 1 == top:
                if mono[top] != 1:
                    raise NotTotalDerivative(f"{rest} is nonlinear in its top variable")
                lead[(_strip(list(mono[:top])), e)] = c
        step = _integrate_in(DiffPoly._raw(lead, p._gen), top - 1)
        q = q + step
        rest = rest - total_derivative(step)
    return q
