"""GF(2) linear and graded polynomial algebra on int bitsets.

Vectors and matrix rows are Python ints (bit j = column j); addition is
XOR.  Polynomials over Z2[a_1..a_k] are frozensets of exponent tuples
(all coefficients 1), and each graded piece of a quotient ring is handled
by plain Gaussian elimination over its monomial basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

Monomial = tuple[int, ...]
Polynomial = frozenset  # of Monomial


def lsb(x: int) -> int:
    return (x & -x).bit_length() - 1


def dot(x: int, y: int) -> int:
    return (x & y).bit_count() & 1


def reduce_vector(v: int, reducers: dict[int, int]) -> int:
    """Reduce v against reduced-echelon rows keyed by pivot column."""
    for p, row in reducers.items():
        if (v >> p) & 1:
            v ^= row
    return v


def rref(rows, ncols: int) -> tuple[list[int], int, list[int]]:
    """Unique reduced row echelon form: (rows sorted by pivot, rank, pivots)."""
    reducers: dict[int, int] = {}
    for r in rows:
        r = reduce_vector(r, reducers)
        if not r:
            continue
        p = lsb(r)
        for q, row in list(reducers.items()):
            if (row >> p) & 1:
                reducers[q] = row ^ r
        reducers[p] = r
    pivots = sorted(reducers)
    return [reducers[p] for p in pivots], len(pivots), pivots


def rank(rows, ncols: int) -> int:
    return rref(rows, ncols)[1]


def span_reducers(rows) -> dict[int, int]:
    """Reduced-echelon rows of the span, keyed by pivot column."""
    reducers: dict[int, int] = {}
    for r in rows:
        r = reduce_vector(r, reducers)
        if not r:
            continue
        p = lsb(r)
        for q, row in list(reducers.items()):
            if (row >> p) & 1:
                reducers[q] = row ^ r
        reducers[p] = r
    return reducers


@lru_cache(maxsize=None)
def monomials_of_degree(k: int, d: int) -> tuple[Monomial, ...]:
    """All degree-d exponent tuples over k generators, graded-lex descending."""
    if k < 1:
        raise ValueError("need at least one generator")
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if k == 1:
        return ((d,),)
    out = []
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(k - 1, d - e):
            out.append((e,) + rest)
    return tuple(out)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_degree(m: Monomial) -> int:
    return sum(m)


def unit_monomial(k: int) -> Monomial:
    return (0,) * k


def generator_monomial(k: int, i: int) -> Monomial:
    """The degree-1 monomial a_i (1-based i)."""
    return tuple(1 if j == i - 1 else 0 for j in range(k))


def squarefree_monomial(k: int, facets) -> Monomial:
    """The product of distinct generators a_i for i in facets (1-based)."""
    fs = set(facets)
    return tuple(1 if j + 1 in fs else 0 for j in range(k))


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p ^ q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    acc: set[Monomial] = set()
    for ma in p:
        for mb in q:
            acc ^= {mono_mul(ma, mb)}
    return frozenset(acc)


def homogeneous_degree(p: Polynomial) -> int | None:
    """Degree of a nonzero homogeneous polynomial, None if p is zero."""
    degrees = {mono_degree(m) for m in p}
    if not degrees:
        return None
    if len(degrees) > 1:
        raise ValueError("polynomial is not homogeneous")
    return degrees.pop()


def poly_to_vec(p: Polynomial, index: dict[Monomial, int]) -> int:
    v = 0
    for m in p:
        v |= 1 << index[m]
    return v


def vec_to_poly(v: int, monomials) -> Polynomial:
    out = set()
    while v:
        b = lsb(v)
        out.add(monomials[b])
        v &= v - 1
    return frozenset(out)


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"a{i}")
        elif e > 1:
            parts.append(f"a{i}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(p: Polynomial) -> str:
    if not p:
        return "0"
    ordered = sorted(p, reverse=True)
    return " + ".join(format_monomial(m) for m in ordered)


def parse_poly(text: str, k: int) -> Polynomial:
    text = text.strip()
    if text == "0":
        return frozenset()
    monos = set()
    for term in text.split("+"):
        m = [0] * k
        term = term.strip()
        if term != "1":
            for factor in term.split("*"):
                if "^" in factor:
                    name, exp = factor.split("^")
                else:
                    name, exp = factor, "1"
                m[int(name[1:]) - 1] += int(exp)
        monos ^= {tuple(m)}
    return frozenset(monos)


def ideal_degree_span(i_gens, j_gens, d: int, k: int):
    """Echelon basis of the degree-d piece of the ideal (I + J).

    Rows span { m * g : g a generator, deg(m * g) = d }.  Returns
    (rows, rank, pivots, monomials) over the degree-d monomial basis.
    """
    monomials = monomials_of_degree(k, d)
    index = {m: i for i, m in enumerate(monomials)}
    rows = []
    for g in itertools.chain(i_gens, j_gens):
        dg = homogeneous_degree(g)
        if dg is None or dg > d:
            continue
        for m in monomials_of_degree(k, d - dg):
            prod = frozenset(mono_mul(m, t) for t in g)
            rows.append(poly_to_vec(prod, index))
    reduced, rk, pivots = rref(rows, len(monomials))
    return reduced, rk, pivots, monomials


@dataclass(eq=False)
class GradedQuotient:
    """Per-degree bases and reducers for Z2[a_1..a_k] / (I + J).

    reducers[d] maps pivot column -> echelon row of the degree-d ideal
    piece; dims[d] is the coset dimension of degree d.
    """

    num_gens: int
    max_degree: int
    monomials: tuple[tuple[Monomial, ...], ...]
    index: tuple[dict[Monomial, int], ...]
    reducers: tuple[dict[int, int], ...]
    dims: tuple[int, ...]


def build_quotient(k: int, n: int, i_gens, j_gens) -> GradedQuotient:
    """Quotient data for degrees 0..n."""
    monomials = []
    index = []
    reducers = []
    dims = []
    for d in range(n + 1):
        rows, rk, pivots, monos = ideal_degree_span(i_gens, j_gens, d, k)
        monomials.append(monos)
        index.append({m: i for i, m in enumerate(monos)})
        reducers.append({p: r for p, r in zip(pivots, rows)})
        dims.append(len(monos) - rk)
    return GradedQuotient(k, n, tuple(monomials), tuple(index), tuple(reducers), tuple(dims))


def normal_form(p: Polynomial, quotient: GradedQuotient) -> Polynomial:
    """Unique reduction of a homogeneous polynomial modulo the ideal span."""
    d = homogeneous_degree(p)
    if d is None:
        return frozenset()
    if d > quotient.max_degree:
        raise ValueError(f"degree {d} out of range 0..{quotient.max_degree}")
    v = poly_to_vec(p, quotient.index[d])
    v = reduce_vector(v, quotient.reducers[d])
    return vec_to_poly(v, quotient.monomials[d])
