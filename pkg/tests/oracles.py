"""Independent oracles used to cross-check the Groebner machinery.

The relation-ideal oracle knows nothing about Groebner bases: it
enumerates tag monomials up to a degree bound, evaluates each as a
product of the given elements, and extracts the kernel of the resulting
linear map with Gaussian elimination over Fraction.  Any disagreement
with the elimination-based relation ideal is a bug in one of the two.
"""

from fractions import Fraction
from itertools import combinations_with_replacement

from lndkit import Polynomial, Ring


def tag_monomials(count: int, max_degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples over `count` tags with total degree <= bound."""
    out = []
    for degree in range(max_degree + 1):
        for combo in combinations_with_replacement(range(count), degree):
            mono = [0] * count
            for i in combo:
                mono[i] += 1
            out.append(tuple(mono))
    return out


def gaussian_kernel(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of {v : v * rows == 0}, i.e. the left kernel of the matrix.

    Plain fraction-free-naive elimination; fine at oracle scale.
    """
    m = len(rows)
    width = len(rows[0]) if rows else 0
    # augment with the identity so the kernel can be read off the
    # coordinate part of fully reduced rows
    work = [list(row) + [Fraction(int(i == j)) for j in range(m)] for i, row in enumerate(rows)]
    pivot_row = 0
    for col in range(width):
        pivot = next(
            (r for r in range(pivot_row, m) if work[r][col] != 0), None
        )
        if pivot is None:
            continue
        work[pivot_row], work[pivot] = work[pivot], work[pivot_row]
        lead = work[pivot_row][col]
        for r in range(m):
            if r != pivot_row and work[r][col] != 0:
                factor = work[r][col] / lead
                row = work[r]
                top = work[pivot_row]
                for c in range(col, width + m):
                    row[c] -= factor * top[c]
        pivot_row += 1
    kernel = []
    for r in range(m):
        if all(work[r][c] == 0 for c in range(width)):
            kernel.append(work[r][width:])
    return kernel


def brute_relations(
    elements: list[Polynomial], tag_ring: Ring, max_degree: int
) -> list[Polynomial]:
    """All relations among the elements with tag-degree <= max_degree,
    as a vector-space basis of tag-ring polynomials."""
    monos = tag_monomials(len(elements), max_degree)
    products = []
    for mono in monos:
        value = elements[0].ring.one()
        for element, e in zip(elements, mono):
            if e:
                value = value * element**e
        products.append(value)
    support = sorted({m for p in products for m, _ in p.terms()})
    index = {m: i for i, m in enumerate(support)}
    rows = []
    for p in products:
        row = [Fraction(0)] * len(support)
        for m, c in p.terms():
            row[index[m]] = c
        rows.append(row)
    vectors = gaussian_kernel(rows)
    return [
        Polynomial(tag_ring, {m: c for m, c in zip(monos, vec) if c})
        for vec in vectors
    ]


def _rank(rows: list[list[Fraction]]) -> int:
    if not rows:
        return 0
    work = [list(row) for row in rows]
    m, width = len(work), len(work[0])
    rank = 0
    for col in range(width):
        pivot = next((r for r in range(rank, m) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        lead = work[rank][col]
        for r in range(rank + 1, m):
            if work[r][col] != 0:
                factor = work[r][col] / lead
                for c in range(col, width):
                    work[r][c] -= factor * work[rank][c]
        rank += 1
    return rank


def in_span(vector: Polynomial, basis: list[Polynomial]) -> bool:
    """Whether a tag polynomial is a linear combination of the basis.

    Rank comparison over the union of the supports.
    """
    polys = basis + [vector]
    support = sorted({m for p in polys for m, _ in p.terms()})
    index = {m: i for i, m in enumerate(support)}

    def as_row(p: Polynomial) -> list[Fraction]:
        row = [Fraction(0)] * len(support)
        for m, c in p.terms():
            row[index[m]] = c
        return row

    basis_rows = [as_row(p) for p in basis]
    return _rank(basis_rows) == _rank(basis_rows + [as_row(vector)])
