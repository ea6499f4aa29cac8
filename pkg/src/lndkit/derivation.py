"""Derivations of polynomial rings and the exponential machinery for the
locally nilpotent ones.

A derivation is determined by the images of the ring variables and
extended by the Leibniz rule.  For a locally nilpotent derivation the
exponential series terminates, giving a ring map into an extended ring
with one fresh parameter variable, and evaluating that parameter gives
the induced flow on points and on polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Mapping

from .errors import NilpotencyCapError, RingMismatchError
from .poly import LaurentElement, Point, Polynomial, Ring, RingMap, Scalar

# Iterated application stops with an error/None after this many steps
# unless the caller overrides it.
NILPOTENCY_CAP = 64


@dataclass(frozen=True)
class Derivation:
    """A derivation of a polynomial ring, given by variable images."""

    ring: Ring
    images: tuple[Polynomial, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != self.ring.nvars:
            raise ValueError("one image per ring variable required")
        for img in images:
            if img.ring != self.ring:
                raise RingMismatchError("image lies outside the ring")
        object.__setattr__(self, "images", images)

    @classmethod
    def from_mapping(cls, ring: Ring, mapping: Mapping[str, Polynomial]) -> "Derivation":
        """Build a derivation from a partial {variable: image} table.

        Variables absent from the table are sent to zero.
        """
        for name in mapping:
            ring.index(name)
        images = [mapping.get(name, ring.zero()) for name in ring.variables]
        return cls(ring, tuple(images))

    def image(self, name: str) -> Polynomial:
        return self.images[self.ring.index(name)]

    # -- application ----------------------------------------------------

    def apply(self, f: Polynomial) -> Polynomial:
        """Apply the derivation once, via the Leibniz rule."""
        if f.ring != self.ring:
            raise RingMismatchError("polynomial lies outside the ring")
        total = self.ring.zero()
        for name, img in zip(self.ring.variables, self.images):
            if not img.is_zero():
                total = total + img * f.partial(name)
        return total

    def __call__(self, f: Polynomial) -> Polynomial:
        return self.apply(f)

    def apply_iter(self, f: Polynomial, times: int) -> Polynomial:
        if times < 0:
            raise ValueError("times must be nonnegative")
        for _ in range(times):
            f = self.apply(f)
        return f

    def iterates(self, f: Polynomial, cap: int | None = None) -> Iterator[Polynomial]:
        """Yield f, Df, D^2 f, ... until zero; error past the cap.

        The zero polynomial is not yielded.
        """
        limit = NILPOTENCY_CAP if cap is None else cap
        count = 0
        while not f.is_zero():
            if count >= limit:
                raise NilpotencyCapError(
                    f"no zero after {limit} applications"
                )
            yield f
            f = self.apply(f)
            count += 1

    def apply_laurent(self, elem: LaurentElement) -> LaurentElement:
        """Apply the derivation in the localization, by the quotient rule."""
        num, var, k = elem.numerator, elem.denom_var, elem.denom_power
        if k == 0:
            return LaurentElement(self.apply(num), var, 0)
        loc = self.ring.var(var)
        lifted = self.apply(num) * loc - k * num * self.image(var)
        return LaurentElement(lifted, var, k + 1)

    # -- nilpotency -----------------------------------------------------

    def nilpotency_index(self, f: Polynomial, cap: int | None = None) -> int | None:
        """Least n with D^n f = 0, or None if not reached within the cap."""
        limit = NILPOTENCY_CAP if cap is None else cap
        n = 0
        while not f.is_zero():
            if n >= limit:
                return None
            f = self.apply(f)
            n += 1
        return n

    def is_locally_nilpotent(self, cap: int | None = None) -> bool:
        """Whether every variable is annihilated by some iterate.

        A True answer is a proof (nilpotency on generators extends to the
        whole ring); a False answer means the cap was hit and is evidence
        only.
        """
        return all(
            self.nilpotency_index(self.ring.var(v), cap) is not None
            for v in self.ring.variables
        )

    # -- exponential ----------------------------------------------------

    def exponential(self, parameter: str = "r", cap: int | None = None) -> RingMap:
        """The exponential ring map into ring extended by a parameter.

        Each variable y is sent to sum_k D^k(y)/k! * parameter^k, which
        terminates exactly when the derivation is locally nilpotent.
        The extended ring carries no weights.
        """
        if parameter in self.ring.variables:
            raise ValueError(f"parameter {parameter!r} collides with a ring variable")
        extended = Ring((parameter,) + self.ring.variables)
        embed = RingMap.from_mapping(self.ring, extended, {})
        param = extended.var(parameter)
        images = []
        for name in self.ring.variables:
            total = extended.zero()
            for k, iterate in enumerate(self.iterates(self.ring.var(name), cap)):
                total = total + embed(iterate) * Fraction(1, factorial(k)) * param**k
            images.append(total)
        return RingMap(self.ring, extended, tuple(images))

    def translate(self, f: Polynomial, value: Scalar) -> Polynomial:
        """Evaluate the exponential at a parameter value: sum D^k(f)/k! a^k."""
        a = Fraction(value)
        total = self.ring.zero()
        for k, iterate in enumerate(self.iterates(f)):
            total = total + iterate * (a**k / factorial(k))
        return total

    def orbit_point(self, value: Scalar, point: Point) -> Point:
        """Move a point along the flow by the given parameter value."""
        if point.ring != self.ring:
            raise RingMismatchError("point lives in a different ring")
        a = Fraction(value)
        coords = []
        for name in self.ring.variables:
            total = Fraction(0)
            for k, iterate in enumerate(self.iterates(self.ring.var(name))):
                total += iterate.evaluate(point) * a**k / factorial(k)
            coords.append(total)
        return Point(self.ring, tuple(coords))

    def is_invariant(self, f: Polynomial) -> bool:
        return self.apply(f).is_zero()

    def __repr__(self) -> str:
        pairs = ", ".join(
            f"{name} -> {img!s}"
            for name, img in zip(self.ring.variables, self.images)
            if not img.is_zero()
        )
        return f"Derivation({pairs or '0'})"


def intertwines(link: RingMap, source: Derivation, target: Derivation) -> bool:
    """Whether link * source == target * link as maps on the source ring.

    Both sides are derivations along link, so checking the ring
    variables suffices.
    """
    if link.source != source.ring or link.target != target.ring:
        raise RingMismatchError("link does not connect the two derivations")
    for name in source.ring.variables:
        lhs = link(source.image(name))
        rhs = target.apply(link(source.ring.var(name)))
        if lhs != rhs:
            return False
    return True


def commutes_with_partial(derivation: Derivation, name: str) -> bool:
    """Whether the derivation commutes with d/d(name).

    The commutator is itself a derivation, and on a variable y it equals
    minus the partial of the image of y, so it vanishes exactly when no
    image involves the variable.
    """
    derivation.ring.index(name)
    return all(img.partial(name).is_zero() for img in derivation.images)
