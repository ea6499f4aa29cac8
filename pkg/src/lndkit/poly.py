"""Sparse multivariate polynomials over the rationals, with exact arithmetic.

A polynomial is stored as a dict mapping exponent tuples to nonzero
Fractions.  All arithmetic is exact; nothing in this module ever rounds.
The canonical term order used for iteration and printing is graded
lexicographic, descending.

Also provided: ring homomorphisms given by variable images (RingMap),
rational points (Point), and elements of the localization at a single
variable (LaurentElement).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Iterator, Mapping, Union

from .errors import (
    ExponentOverflowError,
    GradingError,
    MixedDenominatorError,
    NotDivisibleError,
    RingMismatchError,
    UnknownVariableError,
)

Rational = Fraction
Monomial = tuple  # exponent tuple, one entry per ring variable
Scalar = Union[int, Fraction]

# Safety rail: any single exponent above this aborts the computation
# instead of silently chewing memory.  Mutable on purpose.
EXPONENT_CAP = 2**16


def grlex_key(mono: tuple[int, ...]) -> tuple:
    """Sort key realizing graded lexicographic order (ascending)."""
    return (sum(mono), mono)


@dataclass(frozen=True)
class Ring:
    """A polynomial ring over the rationals with named variables.

    weights, when present, assign a positive integer weight to each
    variable and induce the weighted grading used by weighted_degree.
    """

    variables: tuple[str, ...]
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ValueError("ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        for name in self.variables:
            if not _is_identifier(name):
                raise ValueError(f"bad variable name: {name!r}")
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(self.weights))
            if len(self.weights) != len(self.variables):
                raise ValueError("one weight per variable required")
            if any(not isinstance(w, int) or w <= 0 for w in self.weights):
                raise ValueError("weights must be positive integers")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariableError(
                f"variable {name!r} not in ring {self.variables}"
            ) from None

    def var(self, name: str) -> Polynomial:
        """The variable `name` as a polynomial."""
        mono = [0] * self.nvars
        mono[self.index(name)] = 1
        return Polynomial(self, {tuple(mono): Fraction(1)})

    def const(self, value: Scalar) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: Fraction(value)})

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def monomial(self, exps: Iterable[int], coeff: Scalar = 1) -> Polynomial:
        return Polynomial(self, {tuple(exps): Fraction(coeff)})


def _is_identifier(name: str) -> bool:
    if not name:
        return False
    head, tail = name[0], name[1:]
    if not (head.isalpha() or head == "_"):
        return False
    return all(c.isalnum() or c == "_" for c in tail)


class Polynomial:
    """Immutable sparse polynomial: exponent tuple -> nonzero Fraction."""

    __slots__ = ("ring", "_terms", "_sorted")

    def __init__(self, ring: Ring, terms: Mapping[tuple[int, ...], Scalar]):
        clean: dict[tuple[int, ...], Fraction] = {}
        n = ring.nvars
        for mono, coeff in terms.items():
            mono = tuple(mono)
            if len(mono) != n:
                raise ValueError(
                    f"exponent tuple {mono} has wrong length for {ring.variables}"
                )
            for e in mono:
                if not isinstance(e, int) or e < 0:
                    raise ValueError(f"exponents must be nonnegative ints: {mono}")
                if e > EXPONENT_CAP:
                    raise ExponentOverflowError(
                        f"exponent {e} exceeds cap {EXPONENT_CAP}"
                    )
            c = Fraction(coeff)
            if c:
                clean[mono] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_sorted", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- inspection ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def terms(self) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
        """Terms in descending graded-lex order."""
        if self._sorted is None:
            ordered = tuple(
                sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)
            )
            object.__setattr__(self, "_sorted", ordered)
        return self._sorted

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        return iter(self.terms())

    def term_dict(self) -> dict[tuple[int, ...], Fraction]:
        """A copy of the underlying term mapping."""
        return dict(self._terms)

    def coefficient(self, mono: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._terms)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        """Leading term under the canonical (grlex descending) order."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms()[0]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def total_degree(self) -> int:
        """Max total degree of any term; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def degree_in(self, name: str) -> int:
        """Max exponent of one variable; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        i = self.ring.index(name)
        return max(m[i] for m in self._terms)

    def variables_used(self) -> tuple[str, ...]:
        used = [
            v
            for i, v in enumerate(self.ring.variables)
            if any(m[i] for m in self._terms)
        ]
        return tuple(used)

    def weighted_degree(self) -> Union[int, "DegreeSpread"]:
        """Weighted degree under the ring's grading.

        Returns the common degree for a homogeneous polynomial, a
        DegreeSpread(min, max) for an inhomogeneous one.  The zero
        polynomial is homogeneous of every degree; we report 0.
        """
        if self.ring.weights is None:
            raise GradingError("ring has no weights")
        if not self._terms:
            return 0
        w = self.ring.weights
        degs = {sum(e * wt for e, wt in zip(m, w)) for m in self._terms}
        if len(degs) == 1:
            return degs.pop()
        return DegreeSpread(min(degs), max(degs))

    def is_homogeneous(self) -> bool:
        return isinstance(self.weighted_degree(), int)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(
                    f"rings differ: {self.ring.variables} vs {other.ring.variables}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            s = out.get(mono, Fraction(0)) + coeff
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return self.ring.zero()
            return Polynomial(
                self.ring, {m: c * v for m, v in self._terms.items()}
            )
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(mono, Fraction(0)) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative ints")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n > 1
            n >>= 1
            if base_needed and n:
                base = base * base
        return result

    # -- calculus and substitution -------------------------------------

    def partial(self, name: str) -> "Polynomial":
        """Formal partial derivative with respect to one variable."""
        i = self.ring.index(name)
        out: dict[tuple[int, ...], Fraction] = {}
        for mono, coeff in self._terms.items():
            e = mono[i]
            if e:
                lowered = mono[:i] + (e - 1,) + mono[i + 1 :]
                out[lowered] = out.get(lowered, Fraction(0)) + coeff * e
        return Polynomial(self.ring, out)

    def evaluate(self, point: "Point") -> Fraction:
        if point.ring != self.ring:
            raise RingMismatchError("point lives in a different ring")
        total = Fraction(0)
        coords = point.coordinates
        for mono, coeff in self._terms.items():
            val = coeff
            for c, e in zip(coords, mono):
                if e:
                    val *= c**e
            total += val
        return total

    def exact_divide_var(self, name: str, power: int = 1) -> "Polynomial":
        """Divide by name**power, raising NotDivisibleError on any remainder."""
        if power < 0:
            raise ValueError("power must be nonnegative")
        if power == 0:
            return self
        i = self.ring.index(name)
        out: dict[tuple[int, ...], Fraction] = {}
        for mono, coeff in self._terms.items():
            if mono[i] < power:
                raise NotDivisibleError(
                    f"term with {name}^{mono[i]} not divisible by {name}^{power}",
                    witness=mono,
                )
            out[mono[:i] + (mono[i] - power,) + mono[i + 1 :]] = coeff
        return Polynomial(self.ring, out)

    def min_exponent(self, name: str) -> int:
        """Least exponent of name across terms (0 for the zero polynomial)."""
        if not self._terms:
            return 0
        i = self.ring.index(name)
        return min(m[i] for m in self._terms)

    def content_and_primitive(self) -> tuple[Fraction, "Polynomial"]:
        """Write self = content * primitive with primitive having coprime
        integer coefficients and positive leading coefficient."""
        if not self._terms:
            return Fraction(0), self
        coeffs = list(self._terms.values())
        num = reduce(gcd, (abs(c.numerator) for c in coeffs))
        den = reduce(_lcm, (c.denominator for c in coeffs))
        content = Fraction(num, den)
        if self.leading_coefficient() < 0:
            content = -content
        prim = self * (1 / content)
        return content, prim

    def primitive(self) -> "Polynomial":
        return self.content_and_primitive()[1]

    def monic(self) -> "Polynomial":
        """Scale so the canonical leading coefficient is 1."""
        if not self._terms:
            return self
        return self * (1 / self.leading_coefficient())

    # -- equality and printing ----------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self._terms.items())))

    def __str__(self) -> str:
        from .parse import print_canonical

        return print_canonical(self)

    def __repr__(self) -> str:
        return f"Polynomial({self!s})"


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@dataclass(frozen=True)
class DegreeSpread:
    """Degree range of an inhomogeneous polynomial."""

    min: int
    max: int


@dataclass(frozen=True)
class Point:
    """A rational point of the affine space attached to a ring."""

    ring: Ring
    coordinates: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coordinates)
        if len(coords) != self.ring.nvars:
            raise ValueError("one coordinate per variable required")
        object.__setattr__(self, "coordinates", coords)

    def coordinate(self, name: str) -> Fraction:
        return self.coordinates[self.ring.index(name)]

    def replace(self, name: str, value: Scalar) -> "Point":
        i = self.ring.index(name)
        coords = list(self.coordinates)
        coords[i] = Fraction(value)
        return Point(self.ring, tuple(coords))


class RingMap:
    """Ring homomorphism determined by images of the source variables."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: Ring, target: Ring, images: Iterable[Polynomial]):
        images = tuple(images)
        if len(images) != source.nvars:
            raise ValueError("one image per source variable required")
        for img in images:
            if img.ring != target:
                raise RingMismatchError("image lies outside the target ring")
        self.source = source
        self.target = target
        self.images = images

    @classmethod
    def from_mapping(
        cls,
        source: Ring,
        target: Ring,
        mapping: Mapping[str, Polynomial],
    ) -> "RingMap":
        """Build a map from a partial {variable: image} table.

        Source variables absent from the table must exist in the target
        by the same name and are sent to themselves.
        """
        for name in mapping:
            source.index(name)  # raises on unknown names
        images = []
        for name in source.variables:
            if name in mapping:
                images.append(mapping[name])
            else:
                images.append(target.var(name))
        return cls(source, target, images)

    def apply(self, f: Polynomial) -> Polynomial:
        if f.ring != self.source:
            raise RingMismatchError("polynomial lies outside the source ring")
        power_cache: dict[tuple[int, int], Polynomial] = {}

        def pow_img(i: int, e: int) -> Polynomial:
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = self.images[i] ** e
            return power_cache[key]

        total = self.target.zero()
        for mono, coeff in f.term_dict().items():
            piece = self.target.const(coeff)
            for i, e in enumerate(mono):
                if e:
                    piece = piece * pow_img(i, e)
            total = total + piece
        return total

    __call__ = apply

    def __repr__(self) -> str:
        pairs = ", ".join(
            f"{v} -> {img!s}" for v, img in zip(self.source.variables, self.images)
        )
        return f"RingMap({pairs})"


class LaurentElement:
    """Element of the localization of a ring at one variable.

    Stored as numerator / denom_var**denom_power and kept normalized:
    either denom_power is 0, or denom_var does not divide the numerator.
    """

    __slots__ = ("numerator", "denom_var", "denom_power")

    def __init__(self, numerator: Polynomial, denom_var: str, denom_power: int = 0):
        numerator.ring.index(denom_var)  # validate the name
        if not isinstance(denom_power, int) or denom_power < 0:
            raise ValueError("denominator power must be a nonnegative int")
        if numerator.is_zero():
            denom_power = 0
        elif denom_power:
            drop = min(denom_power, numerator.min_exponent(denom_var))
            if drop:
                numerator = numerator.exact_divide_var(denom_var, drop)
                denom_power -= drop
        self.numerator = numerator
        self.denom_var = denom_var
        self.denom_power = denom_power

    @property
    def ring(self) -> Ring:
        return self.numerator.ring

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_polynomial(self) -> bool:
        return self.denom_power == 0

    def as_polynomial(self) -> Polynomial:
        if self.denom_power:
            raise NotDivisibleError(
                f"element has denominator {self.denom_var}^{self.denom_power}"
            )
        return self.numerator

    def _align(self, other: "LaurentElement") -> tuple[Polynomial, Polynomial, str, int]:
        if self.ring != other.ring:
            raise RingMismatchError("localizations over different rings")
        var = self._common_var(other)
        p = max(self.denom_power, other.denom_power)
        a = self.numerator
        b = other.numerator
        if p > self.denom_power:
            a = a * a.ring.var(var) ** (p - self.denom_power)
        if p > other.denom_power:
            b = b * b.ring.var(var) ** (p - other.denom_power)
        return a, b, var, p

    def _common_var(self, other: "LaurentElement") -> str:
        if self.denom_power and other.denom_power:
            if self.denom_var != other.denom_var:
                raise MixedDenominatorError(
                    f"denominators {self.denom_var} and {other.denom_var} differ"
                )
            return self.denom_var
        return self.denom_var if self.denom_power else other.denom_var

    def _coerce(self, other) -> "LaurentElement | None":
        if isinstance(other, LaurentElement):
            return other
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError("localizations over different rings")
            return LaurentElement(other, self.denom_var, 0)
        if isinstance(other, (int, Fraction)):
            return LaurentElement(self.ring.const(other), self.denom_var, 0)
        return None

    def __add__(self, other) -> "LaurentElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, var, p = self._align(other)
        return LaurentElement(a + b, var, p)

    __radd__ = __add__

    def __neg__(self) -> "LaurentElement":
        return LaurentElement(-self.numerator, self.denom_var, self.denom_power)

    def __sub__(self, other) -> "LaurentElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "LaurentElement":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        var = self._common_var(other)
        return LaurentElement(
            self.numerator * other.numerator,
            var,
            self.denom_power + other.denom_power,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentElement":
        if not isinstance(n, int) or n < 0:
            raise ValueError("powers must be nonnegative ints")
        return LaurentElement(
            self.numerator**n, self.denom_var, self.denom_power * n
        )

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.ring != other.ring:
            return False
        if self.denom_power != other.denom_power:
            return False
        if self.denom_power and self.denom_var != other.denom_var:
            return False
        return self.numerator == other.numerator

    def __hash__(self) -> int:
        var = self.denom_var if self.denom_power else None
        return hash((self.numerator, var, self.denom_power))

    def __str__(self) -> str:
        if self.denom_power == 0:
            return str(self.numerator)
        denom = self.denom_var
        if self.denom_power > 1:
            denom = f"{self.denom_var}^{self.denom_power}"
        return f"({self.numerator}) / {denom}"

    def __repr__(self) -> str:
        return f"LaurentElement({self!s})"
