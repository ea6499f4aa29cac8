"""Kernel machinery for locally nilpotent derivations.

Everything here runs through one localization trick: if D(loc) = 0 and
some variable y has D(y) = c * loc**p, then sigma = y/(c*loc**p) is a
slice for D after inverting loc, and

    pi(g) = sum_k (-sigma)**k D**k(g) / k!

projects the localized ring onto the localized kernel.  That gives exact
generators of the localized kernel (slice_kernel_generators).  To pass
from the localized kernel to the honest one, kernel_check runs the
reduce-and-divide loop: compute the relations of the candidate
generators modulo loc, substitute the candidates back into each
relation, divide by loc once, and test membership in the candidate
subalgebra.  Fresh quotients that fail membership are new kernel
elements; a round with no failures certifies that the candidates
generate the kernel.  kernel_compute iterates rounds until that
certificate appears or a round budget runs out.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Sequence

from .derivation import Derivation
from .errors import NonInvariantCandidateError, SliceError
from .groebner import RelationIdeal, SubalgebraTester, relation_ideal
from .poly import LaurentElement, Polynomial, RingMap, grlex_key

# How many extra factors of the localized variable to try when testing
# that a localized kernel generator already lies in the candidate
# algebra.
DIVISION_BOUND = 16


@dataclass(frozen=True)
class Slice:
    """A slice datum: D(var) = coefficient * loc_var**power, D(loc_var) = 0.

    After inverting loc_var, sigma() maps to 1 under the derivation.
    """

    derivation: Derivation
    var: str
    loc_var: str
    coefficient: Fraction
    power: int

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))

    @classmethod
    def of(cls, derivation: Derivation, var: str, loc_var: str) -> "Slice":
        """Read the coefficient and power off the image of var."""
        image = derivation.image(var)
        terms = image.term_dict()
        if len(terms) != 1:
            raise SliceError(
                f"image of {var} is not a monomial in {loc_var}: {image}"
            )
        ((mono, coeff),) = terms.items()
        li = derivation.ring.index(loc_var)
        if any(e for i, e in enumerate(mono) if i != li):
            raise SliceError(
                f"image of {var} involves variables besides {loc_var}: {image}"
            )
        slc = cls(derivation, var, loc_var, coeff, mono[li])
        slc.validate()
        return slc

    @classmethod
    def infer(cls, derivation: Derivation, loc_var: str | None = None) -> "Slice":
        """First variable (ring order) whose image is a monomial in an
        invariant variable.  Tries every invariant variable as the
        localizer unless one is named."""
        ring = derivation.ring
        if loc_var is None:
            locs = [
                name for name in ring.variables
                if derivation.image(name).is_zero()
            ]
        else:
            locs = [loc_var]
        for loc in locs:
            for var in ring.variables:
                if var == loc:
                    continue
                try:
                    return cls.of(derivation, var, loc)
                except SliceError:
                    continue
        raise SliceError("no slice variable found")

    def validate(self) -> None:
        ring = self.derivation.ring
        ring.index(self.var)
        if not self.derivation.image(self.loc_var).is_zero():
            raise SliceError(f"localized variable {self.loc_var} is not invariant")
        if self.coefficient == 0:
            raise SliceError("slice coefficient must be nonzero")
        expected = ring.var(self.loc_var) ** self.power * self.coefficient
        if self.derivation.image(self.var) != expected:
            raise SliceError(
                f"image of {self.var} is not {self.coefficient} * "
                f"{self.loc_var}^{self.power}"
            )

    def sigma(self) -> LaurentElement:
        ring = self.derivation.ring
        numerator = ring.var(self.var) * (1 / self.coefficient)
        return LaurentElement(numerator, self.loc_var, self.power)


def slice_kernel_generators(
    slc: Slice, cap: int | None = None
) -> tuple[LaurentElement, ...]:
    """Images of the ring variables under the slice projection.

    These generate the kernel of the derivation over the localized ring;
    the entry for the slice variable itself is zero.
    """
    slc.validate()
    derivation = slc.derivation
    ring = derivation.ring
    sigma = slc.sigma()
    out = []
    for name in ring.variables:
        total = LaurentElement(ring.zero(), slc.loc_var, 0)
        for k, iterate in enumerate(derivation.iterates(ring.var(name), cap)):
            scale = Fraction((-1) ** k, factorial(k))
            total = total + sigma**k * iterate * scale
        out.append(total)
    return tuple(out)


class KernelStatus(Enum):
    CONFIRMED = "confirmed"
    NEW_GENERATORS = "new-generators"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SufficiencyCheck:
    """Record of one localized-generator containment test.

    shift is the least k with numerator * loc**k inside the candidate
    algebra, or None if the bound was exhausted.
    """

    variable: str
    generator: LaurentElement
    shift: int | None


@dataclass(frozen=True)
class RelationCheck:
    """Record of one relation: the candidates substituted into it,
    divided once by the localized variable, and tested for membership."""

    relation: Polynomial
    quotient: Polynomial
    representation: Polynomial | None


@dataclass(frozen=True)
class KernelCheckOutcome:
    status: KernelStatus
    new_elements: tuple[Polynomial, ...]
    relations: RelationIdeal | None
    checks: tuple[RelationCheck, ...]
    sufficiency: tuple[SufficiencyCheck, ...]
    notes: tuple[str, ...] = ()

    @property
    def confirmed(self) -> bool:
        return self.status is KernelStatus.CONFIRMED


def kernel_check(
    derivation: Derivation,
    candidates: Sequence[Polynomial],
    slc: Slice | None = None,
    *,
    division_bound: int | None = None,
) -> KernelCheckOutcome:
    """One round of the reduce-and-divide kernel test.

    Returns CONFIRMED when the candidates provably generate the kernel,
    NEW_GENERATORS with fresh kernel elements otherwise, or INCONCLUSIVE
    when a localized generator could not be pushed into the candidate
    algebra within the division bound.
    """
    bound = DIVISION_BOUND if division_bound is None else division_bound
    candidates = tuple(candidates)
    if not candidates:
        raise ValueError("at least one candidate required")
    if slc is None:
        slc = Slice.infer(derivation)
    if slc.derivation != derivation:
        raise ValueError("slice belongs to a different derivation")
    slc.validate()
    ring = derivation.ring
    loc_poly = ring.var(slc.loc_var)

    for f in candidates:
        image = derivation.apply(f)
        if not image.is_zero():
            raise NonInvariantCandidateError(
                f"candidate {f} is not in the kernel", witness=image
            )
    if loc_poly not in candidates:
        raise ValueError("the localized variable must be among the candidates")

    tester = SubalgebraTester(candidates)

    # Sufficiency: every localized kernel generator must reach the
    # candidate algebra after finitely many multiplications by loc.
    sufficiency = []
    conclusive = True
    for name, gen in zip(ring.variables, slice_kernel_generators(slc)):
        if gen.is_zero() or gen.numerator.is_constant():
            sufficiency.append(SufficiencyCheck(name, gen, 0))
            continue
        probe = gen.numerator
        shift = None
        for k in range(bound + 1):
            if tester.contains(probe):
                shift = k
                break
            probe = probe * loc_poly
        sufficiency.append(SufficiencyCheck(name, gen, shift))
        if shift is None:
            conclusive = False
    if not conclusive:
        failed = [c.variable for c in sufficiency if c.shift is None]
        return KernelCheckOutcome(
            KernelStatus.INCONCLUSIVE,
            (),
            None,
            (),
            tuple(sufficiency),
            (f"localized generators for {failed} stayed outside the "
             f"candidate algebra through {bound} extra factors of {slc.loc_var}",),
        )

    # Relations of the candidates modulo loc, then divide and retest.
    reduce_map = RingMap.from_mapping(ring, ring, {slc.loc_var: ring.zero()})
    images = [reduce_map(f) for f in candidates]
    relations = relation_ideal(images)
    substitute = RingMap(relations.tag_ring, ring, candidates)

    checks = []
    fresh = []
    for relation in relations.generators:
        value = substitute(relation)
        if value.is_zero():
            checks.append(
                RelationCheck(relation, ring.zero(), relations.tag_ring.zero())
            )
            continue
        quotient = value.exact_divide_var(slc.loc_var, 1)
        representation = tester.representation(quotient)
        checks.append(RelationCheck(relation, quotient, representation))
        if representation is None:
            fresh.append(quotient)

    normalized = []
    seen = set()
    for q in fresh:
        p = q.primitive()
        image = derivation.apply(p)
        if not image.is_zero():
            raise NonInvariantCandidateError(
                f"derived element {p} fell outside the kernel", witness=image
            )
        if p not in seen:
            seen.add(p)
            normalized.append(p)
    normalized.sort(key=lambda p: (grlex_key(p.leading_term()[0]), str(p)))

    status = KernelStatus.CONFIRMED if not normalized else KernelStatus.NEW_GENERATORS
    return KernelCheckOutcome(
        status,
        tuple(normalized),
        relations,
        tuple(checks),
        tuple(sufficiency),
    )


@dataclass(frozen=True)
class KernelComputeResult:
    stabilized: bool
    generators: tuple[Polynomial, ...]
    rounds: int
    counts: tuple[int, ...]  # candidate count at the seed and after each round
    new_per_round: tuple[tuple[Polynomial, ...], ...]
    outcomes: tuple[KernelCheckOutcome, ...]


def seed_candidates(slc: Slice, cap: int | None = None) -> tuple[Polynomial, ...]:
    """Initial kernel candidates: the numerators of the localized
    generators, made primitive, constants dropped."""
    seeds = []
    for gen in slice_kernel_generators(slc, cap):
        if gen.is_zero() or gen.numerator.is_constant():
            continue
        p = gen.numerator.primitive()
        if p not in seeds:
            seeds.append(p)
    return tuple(seeds)


def kernel_compute(
    derivation: Derivation,
    slc: Slice | None = None,
    max_rounds: int = 5,
    *,
    seed: Sequence[Polynomial] | None = None,
    division_bound: int | None = None,
) -> KernelComputeResult:
    """Iterate kernel_check, adjoining new elements, until it certifies
    the candidates or the round budget runs out.

    A stabilized result is a proven generating set of the kernel,
    greedily minimized.  An unstabilized result reports the candidates
    accumulated so far.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be at least 1")
    if slc is None:
        slc = Slice.infer(derivation)
    candidates = list(seed) if seed is not None else list(seed_candidates(slc))
    counts = [len(candidates)]
    outcomes = []
    new_per_round = []
    stabilized = False
    rounds = 0
    for _ in range(max_rounds):
        outcome = kernel_check(
            derivation, candidates, slc, division_bound=division_bound
        )
        rounds += 1
        outcomes.append(outcome)
        new_per_round.append(outcome.new_elements)
        candidates.extend(outcome.new_elements)
        counts.append(len(candidates))
        if outcome.status is KernelStatus.CONFIRMED:
            stabilized = True
            break
        if outcome.status is KernelStatus.INCONCLUSIVE:
            break
    generators = tuple(candidates)
    if stabilized:
        generators = _minimize(generators)
    return KernelComputeResult(
        stabilized,
        generators,
        rounds,
        tuple(counts),
        tuple(new_per_round),
        tuple(outcomes),
    )


def _minimize(generators: tuple[Polynomial, ...]) -> tuple[Polynomial, ...]:
    """Drop generators already contained in the algebra of the others."""
    gens = list(generators)
    changed = True
    while changed and len(gens) > 1:
        changed = False
        for i in range(len(gens)):
            rest = gens[:i] + gens[i + 1 :]
            if SubalgebraTester(rest).contains(gens[i]):
                gens.pop(i)
                changed = True
                break
    return tuple(gens)
