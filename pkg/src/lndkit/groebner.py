"""Groebner bases over the rationals, plus the two derived tools this
package leans on: relation ideals of a list of ring elements, and
membership tests for the subalgebra they generate.

The Buchberger loop uses the normal selection strategy (lowest lcm
degree first, ties broken by the order key of the lcm and then by pair
indices) and prunes the pair queue with the Gebauer-Moller criteria:
coprime leading monomials, chains through a dividing lcm, and duplicate
lcms.  Output bases are reduced and monic, hence unique for a given
ideal and order, with generators sorted ascending by leading monomial.

Internally monomials are packed into single integers (see _Packing) so
the hot loops run on machine comparisons instead of tuple traversals,
and coefficients run on gmpy2 rationals when that package is available.
Subalgebra testers against weighted-homogeneous elements grow their
basis lazily, degree by degree, just far enough to answer each
membership query.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import ExponentOverflowError, RingMismatchError
from .poly import Polynomial, Ring, RingMap, grlex_key

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _Q = Fraction

_QZERO = _Q(0)


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order, realized as a sort key on exponent tuples."""

    kind: str
    block: int | None = None

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def grlex(cls) -> "MonomialOrder":
        return cls("grlex")

    @classmethod
    def grevlex(cls) -> "MonomialOrder":
        return cls("grevlex")

    @classmethod
    def elimination(cls, block: int) -> "MonomialOrder":
        """Block order eliminating the first `block` variables.

        Monomials are compared grlex on the first block, ties broken
        grlex on the rest, so anything involving a block variable beats
        everything that avoids them.
        """
        if block < 0:
            raise ValueError("block size must be nonnegative")
        return cls("elim", block)

    @classmethod
    def from_name(cls, name: str) -> "MonomialOrder":
        if name == "lex":
            return cls.lex()
        if name == "grlex":
            return cls.grlex()
        if name == "grevlex":
            return cls.grevlex()
        if name.startswith("elim:"):
            return cls.elimination(int(name.split(":", 1)[1]))
        raise ValueError(f"unknown order {name!r}")

    def key(self) -> Callable[[tuple[int, ...]], tuple]:
        if self.kind == "lex":
            return lambda m: m
        if self.kind == "grlex":
            return lambda m: (sum(m), m)
        if self.kind == "grevlex":
            return lambda m: (sum(m), tuple(-e for e in reversed(m)))
        if self.kind == "elim":
            k = self.block

            def elim_key(m: tuple[int, ...]) -> tuple:
                head, tail = m[:k], m[k:]
                return (sum(head), head, sum(tail), tail)

            return elim_key
        raise ValueError(f"unknown order kind {self.kind!r}")

    def __str__(self) -> str:
        return f"elim:{self.block}" if self.kind == "elim" else self.kind


# -- packed monomials ------------------------------------------------------


class _Packing:
    """Order-embedded packing of exponent tuples into single integers.

    Each monomial becomes one integer built from 16-bit fields, most
    significant first: the order's sort key, written as linear
    functionals of the exponents (degree sums, then raw exponents in key
    position), padded with any raw exponents the key omits.  Integer
    comparison then agrees with the monomial order, addition and
    subtraction act exponentwise, and the spare top bit of every field
    is a guard that turns divisibility and lcm into a couple of bitwise
    operations.  Any field reaching 2^15 (total degree included) raises
    ExponentOverflowError rather than corrupting a neighbour.
    """

    WIDTH = 16
    LIMIT = 1 << (WIDTH - 1)

    def __init__(self, order: MonomialOrder, nvars: int):
        n = nvars
        kind = order.kind
        rows: list[tuple[int, ...]] = []
        raw_at: dict[int, int] = {}

        def raw(j: int) -> tuple[int, ...]:
            raw_at[j] = len(rows)
            return tuple(1 if i == j else 0 for i in range(n))

        if kind == "lex":
            for j in range(n):
                rows.append(raw(j))
        elif kind == "grlex":
            rows.append((1,) * n)
            for j in range(n):
                rows.append(raw(j))
        elif kind == "grevlex":
            rows.append((1,) * n)
            # partial sums e_1+..+e_m for m = n-1 .. 1: comparing them
            # high to low reproduces the reversed-negated tie-break
            for m in range(n - 1, 0, -1):
                rows.append(tuple(1 if i < m else 0 for i in range(n)))
            for j in range(n):
                rows.append(raw(j))
        elif kind == "elim":
            k = order.block
            rows.append(tuple(1 if i < k else 0 for i in range(n)))
            for j in range(k):
                rows.append(raw(j))
            rows.append(tuple(1 if i >= k else 0 for i in range(n)))
            for j in range(k, n):
                rows.append(raw(j))
        else:
            raise ValueError(f"unknown order kind {kind!r}")

        nfields = len(rows)
        width = self.WIDTH
        shifts = [width * (nfields - 1 - i) for i in range(nfields)]
        self.nvars = n
        self.units = tuple(
            sum(rows[i][j] << shifts[i] for i in range(nfields)) for j in range(n)
        )
        self.raw_shifts = tuple(shifts[raw_at[j]] for j in range(n))
        self.guard = sum(self.LIMIT << s for s in shifts)
        self.mask = (1 << width) - 1

    def pack(self, mono: tuple[int, ...]) -> int:
        if sum(mono) >= self.LIMIT:
            raise ExponentOverflowError(
                f"total degree {sum(mono)} exceeds the packed-monomial limit"
            )
        p = 0
        units = self.units
        for j, e in enumerate(mono):
            if e:
                p += e * units[j]
        return p

    def unpack(self, p: int) -> tuple[int, ...]:
        mask = self.mask
        return tuple((p >> s) & mask for s in self.raw_shifts)

    def pack_dict(self, d: dict) -> dict:
        return {self.pack(m): _Q(c) for m, c in d.items()}

    def unpack_dict(self, d: dict) -> dict:
        return {
            self.unpack(p): Fraction(int(c.numerator), int(c.denominator))
            for p, c in d.items()
        }


def _checked(p: int, guard: int) -> int:
    if p & guard:
        raise ExponentOverflowError("monomial exceeds the packed-field limit")
    return p


# -- packed-dict engine ----------------------------------------------------
# Entries are (leading monomial, leading coefficient, dict, tail items)
# with all monomials packed.


def _make_monic(d: dict) -> tuple[int, object, dict]:
    lm = max(d)
    lc = d[lm]
    if lc != 1:
        d = {m: c / lc for m, c in d.items()}
    return lm, d[lm], d


def _entry(d: dict) -> tuple:
    lm = max(d)
    tail = tuple((m, c) for m, c in d.items() if m != lm)
    return (lm, d[lm], d, tail)


class _Reducer:
    """Multivariate division against a growable list of basis entries.

    Keeps a first-divisor cache keyed by leading monomial.  Entries only
    ever get appended and divisors are scanned in list order, so a cached
    hit stays the first divisor forever; cached misses remember how far
    they scanned and resume from there once the list has grown.
    """

    __slots__ = ("entries", "guard", "_cache")

    def __init__(self, entries: list, guard: int):
        self.entries = entries
        self.guard = guard
        self._cache: dict = {}

    def find(self, lead: int) -> int:
        entries = self.entries
        n = len(entries)
        hit = self._cache.get(lead)
        if hit is not None:
            if hit[0] >= 0 or hit[1] == n:
                return hit[0]
            start = hit[1]
        else:
            start = 0
        guard = self.guard
        raised = lead | guard
        for k in range(start, n):
            if (raised - entries[k][0]) & guard == guard:
                self._cache[lead] = (k, n)
                return k
        self._cache[lead] = (-1, n)
        return -1

    def reduce(self, f: dict) -> dict:
        """Full normal form of f; consumes a private copy.

        Tracks the current leading term with a lazy max-heap: every
        monomial of f has at least one heap entry, stale entries are
        skipped on pop.
        """
        f = dict(f)
        remainder: dict = {}
        entries = self.entries
        guard = self.guard
        find = self.find
        push = heapq.heappush
        heap = [-m for m in f]
        heapq.heapify(heap)
        while heap:
            lead = -heapq.heappop(heap)
            coeff = f.pop(lead, None)
            if coeff is None:
                continue
            k = find(lead)
            if k < 0:
                remainder[lead] = coeff
                continue
            lm, lc, _, tail = entries[k]
            shift = lead - lm
            scale = coeff if lc == 1 else coeff / lc
            plain = scale == 1
            for m, gc in tail:
                mm = m + shift
                old = f.get(mm)
                if old is None:
                    if mm & guard:
                        raise ExponentOverflowError(
                            "monomial exceeds the packed-field limit"
                        )
                    f[mm] = -gc if plain else -scale * gc
                    push(heap, -mm)
                else:
                    val = (old - gc) if plain else (old - scale * gc)
                    if val:
                        f[mm] = val
                    else:
                        del f[mm]
        return remainder


def _spoly(a: tuple, b: tuple, lcm: int, guard: int) -> dict:
    lma, lca, fa, _ = a
    lmb, lcb, fb, _ = b
    sa, sb = lcm - lma, lcm - lmb
    out: dict = {}
    for m, c in fa.items():
        out[_checked(m + sa, guard)] = c / lca
    for m, c in fb.items():
        mm = _checked(m + sb, guard)
        val = out.get(mm, _QZERO) - c / lcb
        if val:
            out[mm] = val
        else:
            out.pop(mm, None)
    return out


class _Engine:
    """Resumable Buchberger loop on packed dicts.

    Pairs pop by weighted lcm degree (weights default to all ones), then
    the order rank of the lcm, then indices.  The pair set is maintained
    with the Gebauer-Moller update: a fresh pair dies to a coprime
    classmate or a pair whose lcm divides its own, surviving duplicates
    collapse to one, and old pairs die when the new lead divides their
    lcm strictly between the two old lcms.  Retired elements (lead
    divisible by a newer lead) stop forming pairs but keep reducing.
    Lcms are taken on exponent tuples: packed values cannot be maxed
    fieldwise without desyncing the degree sums.

    When every input is homogeneous for the selection weights, the pop
    degree never decreases, so after complete_to(d) the basis computes
    exact normal forms for anything of weighted degree at most d; the
    reducer's full reduction then yields the canonical normal form even
    though the working basis is not interreduced.
    """

    __slots__ = (
        "packing", "guard", "weights", "basis", "lm_tuples", "alive",
        "pairs", "pair_heap", "reducer", "_reduced",
    )

    def __init__(
        self,
        pdicts: Sequence[dict],
        packing: _Packing,
        weights: Sequence[int] | None = None,
    ):
        self.packing = packing
        self.guard = packing.guard
        self.weights = tuple(weights) if weights else (1,) * packing.nvars
        self.basis: list[tuple] = []
        self.lm_tuples: list[tuple[int, ...]] = []
        self.alive: list[bool] = []
        self.pairs: dict[tuple[int, int], int] = {}
        self.pair_heap: list[tuple] = []
        self.reducer = _Reducer(self.basis, self.guard)
        self._reduced: list[dict] | None = None
        for d in pdicts:
            self._adjoin(dict(d))

    def _update(self, t: int) -> None:
        packing = self.packing
        guard = self.guard
        pairs = self.pairs
        lm_tuples = self.lm_tuples
        alive = self.alive
        T = lm_tuples[t]
        Tp = self.basis[t][0]
        cand = []
        for i in range(t):
            if not alive[i]:
                continue
            Li = lm_tuples[i]
            lcm = tuple(x if x >= y else y for x, y in zip(Li, T))
            cop = not any(x and y for x, y in zip(Li, T))
            wdeg = sum(w * e for w, e in zip(self.weights, lcm))
            cand.append((i, packing.pack(lcm), wdeg, cop))
        survivors: list[tuple] = []
        while cand:
            item = cand.pop()
            if not item[3]:
                raised = item[1] | guard
                if any(
                    (raised - q) & guard == guard for _, q, _, _ in cand
                ) or any(
                    (raised - q) & guard == guard for _, q, _, _ in survivors
                ):
                    continue
            survivors.append(item)
        for key, plcm in list(pairs.items()):
            raised = plcm | guard
            if (raised - Tp) & guard != guard:
                continue
            i, j = key
            li = tuple(x if x >= y else y for x, y in zip(lm_tuples[i], T))
            if packing.pack(li) == plcm:
                continue
            lj = tuple(x if x >= y else y for x, y in zip(lm_tuples[j], T))
            if packing.pack(lj) == plcm:
                continue
            del pairs[key]
        for i, plcm, wdeg, cop in survivors:
            if cop:
                continue
            pairs[(i, t)] = plcm
            heapq.heappush(self.pair_heap, (wdeg, plcm, i, t))
        for i in range(t):
            if alive[i] and ((self.basis[i][0] | guard) - Tp) & guard == guard:
                alive[i] = False

    def _adjoin(self, d: dict) -> None:
        self.basis.append(_entry(_make_monic(d)[2]))
        self.lm_tuples.append(self.packing.unpack(self.basis[-1][0]))
        self.alive.append(True)
        self._update(len(self.basis) - 1)

    def _step(self) -> None:
        _, plcm, i, j = heapq.heappop(self.pair_heap)
        if self.pairs.pop((i, j), None) is None:
            return
        remainder = self.reducer.reduce(
            _spoly(self.basis[i], self.basis[j], plcm, self.guard)
        )
        if remainder:
            self._adjoin(remainder)

    def complete_to(self, wdeg: int) -> None:
        heap = self.pair_heap
        while heap and heap[0][0] <= wdeg:
            self._step()

    def complete(self) -> None:
        heap = self.pair_heap
        while heap:
            self._step()

    def reduced(self) -> list[dict]:
        """The reduced monic basis, sorted ascending by leading monomial."""
        if self._reduced is None:
            self.complete()
            self._reduced = _interreduce(self.basis, self.packing)
        return self._reduced


def _interreduce(basis: Sequence[tuple], packing: _Packing) -> list[dict]:
    # minimal basis: drop anything whose lead another lead divides,
    # keeping only the first of any leading-monomial tie
    guard = packing.guard
    kept: list[tuple] = []
    for idx, entry in enumerate(basis):
        lm = entry[0]
        raised = lm | guard
        dominated = False
        for k, other in enumerate(basis):
            if k == idx:
                continue
            lm2 = other[0]
            if (raised - lm2) & guard == guard and (lm2 != lm or k < idx):
                dominated = True
                break
        if not dominated:
            kept.append(entry)
    # tail-reduce each survivor against the others
    reduced: list[dict] = []
    for i, entry in enumerate(kept):
        others = [kept[k] for k in range(len(kept)) if k != i]
        nf = _Reducer(others, guard).reduce(entry[2]) if others else dict(entry[2])
        reduced.append(_make_monic(nf)[2])
    reduced.sort(key=max)
    return reduced


def _buchberger_packed(pdicts: Sequence[dict], packing: _Packing) -> list[dict]:
    return _Engine(pdicts, packing).reduced()


def _common_ring(polys: Sequence[Polynomial]) -> Ring:
    ring = polys[0].ring
    for p in polys[1:]:
        if p.ring != ring:
            raise RingMismatchError("generators live in different rings")
    return ring


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    if f.is_zero() or g.is_zero():
        raise ValueError("s-polynomial of zero is undefined")
    ring = _common_ring([f, g])
    packing = _Packing(order, ring.nvars)
    ea = _entry(packing.pack_dict(f.term_dict()))
    eb = _entry(packing.pack_dict(g.term_dict()))
    lcm = tuple(
        max(x, y) for x, y in zip(packing.unpack(ea[0]), packing.unpack(eb[0]))
    )
    out = _spoly(ea, eb, packing.pack(lcm), packing.guard)
    return Polynomial(ring, packing.unpack_dict(out))


def normal_form(
    f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder
) -> Polynomial:
    """Remainder of f under full multivariate division by basis.

    Divisors are tried in the order given, so the result is canonical
    only when basis is a Groebner basis.
    """
    nonzero = [g for g in basis if not g.is_zero()]
    if not nonzero:
        return f
    ring = _common_ring([f, *nonzero])
    packing = _Packing(order, ring.nvars)
    entries = [_entry(packing.pack_dict(g.term_dict())) for g in nonzero]
    reducer = _Reducer(entries, packing.guard)
    return Polynomial(ring, packing.unpack_dict(reducer.reduce(packing.pack_dict(f.term_dict()))))


def buchberger(
    generators: Sequence[Polynomial], order: MonomialOrder
) -> tuple[Polynomial, ...]:
    """Reduced monic Groebner basis of the ideal the generators span."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return ()
    ring = _common_ring(gens)
    packing = _Packing(order, ring.nvars)
    pdicts = [packing.pack_dict(g.term_dict()) for g in gens]
    pdicts.sort(key=lambda d: (max(d), sorted(d.items())))
    reduced = _buchberger_packed(pdicts, packing)
    return tuple(Polynomial(ring, packing.unpack_dict(d)) for d in reduced)


def ideal_membership(
    f: Polynomial,
    generators: Sequence[Polynomial],
    order: MonomialOrder | None = None,
) -> bool:
    """Whether f lies in the ideal the generators span."""
    order = order or MonomialOrder.grevlex()
    basis = buchberger(generators, order)
    if not basis:
        return f.is_zero()
    return normal_form(f, basis, order).is_zero()


def ideal_equal(
    first: Sequence[Polynomial],
    second: Sequence[Polynomial],
    order: MonomialOrder | None = None,
) -> bool:
    """Whether two generator lists span the same ideal."""
    order = order or MonomialOrder.grevlex()
    return buchberger(first, order) == buchberger(second, order)


# -- relation ideals and subalgebra membership ---------------------------


def _fresh_tag_names(ring: Ring, count: int, prefix: str | None) -> tuple[str, ...]:
    if prefix is None:
        prefix = "X"
        while any(
            name == f"{prefix}{i + 1}" for name in ring.variables for i in range(count)
        ):
            prefix += "X"
    else:
        clash = {f"{prefix}{i + 1}" for i in range(count)} & set(ring.variables)
        if clash:
            raise ValueError(f"tag prefix collides with ring variables: {sorted(clash)}")
    return tuple(f"{prefix}{i + 1}" for i in range(count))


@dataclass(frozen=True)
class RelationIdeal:
    """All polynomial relations among a fixed list of ring elements.

    generators is a reduced Groebner basis (under grlex on the tag ring)
    of the kernel of tag_ring -> R, tag i -> element i.
    """

    tag_ring: Ring
    tags: tuple[str, ...]
    generators: tuple[Polynomial, ...]

    def evaluate(self, relation: Polynomial, elements: Sequence[Polynomial]) -> Polynomial:
        """Substitute the original elements back into a relation."""
        if len(elements) != len(self.tags):
            raise ValueError("one element per tag required")
        ring = _common_ring(list(elements))
        link = RingMap(self.tag_ring, ring, tuple(elements))
        return link(relation)


class SubalgebraTester:
    """Decides membership in the subalgebra generated by fixed elements.

    Builds a Groebner basis of the ideal (g_i - tag_i) in the ring
    extended by one tag per element, under a block order that eliminates
    the original variables.  The normal form of f then lands in the tag
    ring exactly when f belongs to the subalgebra, and the remainder is
    a representing polynomial.  When every element is homogeneous for
    the ring's weights, the basis is completed lazily: each membership
    query extends it just past the query's weighted degree, which is as
    far as the answer can depend on.
    """

    def __init__(self, elements: Sequence[Polynomial], tag_prefix: str | None = None):
        elements = tuple(elements)
        if not elements:
            raise ValueError("at least one element required")
        ring = _common_ring(list(elements))
        self.elements = elements
        self.ring = ring
        self.tags = _fresh_tag_names(ring, len(elements), tag_prefix)
        self.tag_ring = Ring(self.tags)
        self.extended = Ring(ring.variables + self.tags)
        self.order = MonomialOrder.elimination(ring.nvars)
        packing = _Packing(self.order, self.extended.nvars)
        self._ring_weights = ring.weights or (1,) * ring.nvars
        tag_weights = []
        homogeneous = True
        for g in elements:
            degrees = {
                sum(w * e for w, e in zip(self._ring_weights, m))
                for m in g.term_dict()
            }
            if len(degrees) > 1:
                homogeneous = False
            tag_weights.append(max(degrees) if degrees else 1)
        pad = (0,) * len(self.tags)
        ideal = []
        for g, tag in zip(elements, self.tags):
            d = {m + pad: c for m, c in g.term_dict().items()}
            ti = self.extended.index(tag)
            tag_mono = tuple(1 if k == ti else 0 for k in range(self.extended.nvars))
            d[tag_mono] = d.get(tag_mono, Fraction(0)) - 1
            ideal.append(packing.pack_dict(d))
        ideal.sort(key=lambda d: (max(d), sorted(d.items())))
        self._packing = packing
        self._engine = _Engine(
            ideal, packing, self._ring_weights + tuple(tag_weights)
        )
        self._lazy = homogeneous
        if not self._lazy:
            self._engine.complete()
        # a zero head-degree field forces every head exponent to zero, so
        # tag-only monomials are exactly those packing below that field
        self._tag_bound = 1 << (packing.raw_shifts[0] + packing.WIDTH)
        self._nvars = ring.nvars

    def representation(self, f: Polynomial) -> Polynomial | None:
        """A polynomial over the tags evaluating to f, or None."""
        if f.ring != self.ring:
            raise RingMismatchError("polynomial lies outside the base ring")
        packing = self._packing
        terms = f.term_dict()
        if self._lazy and terms:
            self._engine.complete_to(
                max(
                    sum(w * e for w, e in zip(self._ring_weights, m))
                    for m in terms
                )
            )
        pad = (0,) * len(self.tags)
        remainder = self._engine.reducer.reduce(
            {packing.pack(m + pad): c for m, c in terms.items()}
        )
        bound = self._tag_bound
        if any(p >= bound for p in remainder):
            return None
        n = self._nvars
        return Polynomial(
            self.tag_ring,
            {
                packing.unpack(p)[n:]: Fraction(int(c.numerator), int(c.denominator))
                for p, c in remainder.items()
            },
        )

    def contains(self, f: Polynomial) -> bool:
        return self.representation(f) is not None

    def basis(self) -> tuple[Polynomial, ...]:
        """The fully completed reduced Groebner basis of the tag ideal."""
        packing = self._packing
        return tuple(
            Polynomial(self.extended, packing.unpack_dict(d))
            for d in self._engine.reduced()
        )

    def relation_generators(self) -> tuple[Polynomial, ...]:
        """Reduced Groebner basis of the relations among the elements."""
        n = self._nvars
        out = [
            Polynomial(self.tag_ring, {m[n:]: c for m, c in g.term_dict().items()})
            for g in self.basis()
            if not any(any(m[:n]) for m in g.term_dict())
        ]
        out.sort(key=lambda p: grlex_key(p.leading_term()[0]))
        return tuple(out)

    def relations(self) -> RelationIdeal:
        return RelationIdeal(self.tag_ring, self.tags, self.relation_generators())


def relation_ideal(
    elements: Sequence[Polynomial], tag_prefix: str | None = None
) -> RelationIdeal:
    """The ideal of algebraic relations among the given elements."""
    return SubalgebraTester(elements, tag_prefix).relations()


def subalgebra_membership(
    f: Polynomial, elements: Sequence[Polynomial], tag_prefix: str | None = None
) -> Polynomial | None:
    """Representation of f over the given elements, or None.

    One-shot convenience around SubalgebraTester; build the tester
    directly when testing many elements against one list.
    """
    return SubalgebraTester(elements, tag_prefix).representation(f)
