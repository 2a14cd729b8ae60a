"""Exact generation of the dodecahedron and 120-cell incidence tables.

Vertices and outward facet normals are given by coordinates in the golden
field, so vertex-facet incidence ("the inner product attains the facet's
support value") is decided exactly.  The bundled data files are the
canonical labelings; these generators are their oracles.
"""

from __future__ import annotations

import itertools
from collections import defaultdict

from .golden import INV_PHI, INV_PHI_SQ, PHI, PHI_SQ, SQRT5, GoldenNumber
from .scheme import RightAngledScheme, SchemeError, make_scheme

_ZERO = GoldenNumber(0, 0)
_ONE = GoldenNumber(1, 0)
_TWO = GoldenNumber(2, 0)


def _perm_parity(perm) -> int:
    inv = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return inv % 2


def _signed_points(base, parity: int | None = None):
    """Coordinate permutations of base (all, or one parity), with all sign choices."""
    n = len(base)
    points = set()
    for perm in itertools.permutations(range(n)):
        if parity is not None and _perm_parity(perm) != parity:
            continue
        values = tuple(base[p] for p in perm)
        for signs in itertools.product((1, -1), repeat=n):
            points.add(tuple(GoldenNumber(0, 0) + s * v for s, v in zip(signs, values)))
    return points


def _dot(u, v) -> GoldenNumber:
    acc = GoldenNumber(0, 0)
    for x, y in zip(u, v):
        acc = acc + x * y
    return acc


def scheme_from_polar(vertex_coords, facet_normals, dim: int) -> RightAngledScheme:
    """Incidence table of the polytope with the given vertices and facet directions.

    A vertex lies on a facet iff its inner product with the facet's normal
    attains the maximum over all vertices, decided exactly.
    """
    verts = sorted(set(vertex_coords), key=lambda p: tuple(c.key() for c in p))
    normals = sorted(set(facet_normals), key=lambda p: tuple(c.key() for c in p))
    on_vertex: defaultdict[int, set[int]] = defaultdict(set)
    for fi, normal in enumerate(normals, start=1):
        dots = [_dot(v, normal) for v in verts]
        support = max(dots)
        for vi, d in enumerate(dots):
            if d == support:
                on_vertex[vi].add(fi)
    vertices = []
    for vi in range(len(verts)):
        fs = on_vertex[vi]
        if len(fs) != dim:
            raise SchemeError(
                f"internal consistency failure: vertex lies on {len(fs)} facets, expected {dim}"
            )
        vertices.append(frozenset(fs))
    return make_scheme(dim, len(normals), vertices)


def generate_pentagon() -> RightAngledScheme:
    """The pentagon: 5 facets (edges), vertices joining consecutive edges."""
    verts = [frozenset({i, i % 5 + 1}) for i in range(1, 6)]
    return make_scheme(2, 5, verts)


def generate_dodecahedron() -> RightAngledScheme:
    """Dodecahedral incidence from exact coordinates (20 vertices, 12 facets)."""
    vertices = _signed_points((_ONE, _ONE, _ONE))
    for cyc in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        base = (_ZERO, INV_PHI, PHI)
        for signs in itertools.product((1, -1), repeat=3):
            vertices.add(
                tuple(
                    GoldenNumber(0, 0) + signs[i] * base[cyc[i]] for i in range(3)
                )
            )
    normals = set()
    for cyc in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        base = (_ZERO, PHI, _ONE)
        for signs in itertools.product((1, -1), repeat=3):
            normals.add(
                tuple(GoldenNumber(0, 0) + signs[i] * base[cyc[i]] for i in range(3))
            )
    assert len(vertices) == 20 and len(normals) == 12
    return scheme_from_polar(vertices, normals, 3)


def generate_120cell() -> RightAngledScheme:
    """120-cell incidence from exact coordinates (600 vertices, 120 facets).

    Vertex coordinates are the standard ones of the regular {5,3,3};
    facet directions are the 120 vertices of the dual {3,3,5}.
    """
    vertices: set = set()
    vertices |= _signed_points((_ZERO, _ZERO, _TWO, _TWO))
    vertices |= _signed_points((_ONE, _ONE, _ONE, SQRT5))
    vertices |= _signed_points((INV_PHI_SQ, PHI, PHI, PHI))
    vertices |= _signed_points((INV_PHI, INV_PHI, INV_PHI, PHI_SQ))
    vertices |= _signed_points((_ZERO, INV_PHI_SQ, _ONE, PHI_SQ), parity=0)
    vertices |= _signed_points((_ZERO, INV_PHI, PHI, SQRT5), parity=0)
    vertices |= _signed_points((INV_PHI, _ONE, PHI, _TWO), parity=0)
    normals: set = set()
    normals |= _signed_points((_TWO, _ZERO, _ZERO, _ZERO))
    normals |= _signed_points((_ONE, _ONE, _ONE, _ONE))
    # Odd permutations: the parity convention dual to the vertex families above.
    normals |= _signed_points((_ZERO, INV_PHI, _ONE, PHI), parity=1)
    assert len(vertices) == 600 and len(normals) == 120
    return scheme_from_polar(vertices, normals, 4)


GENERATORS = {
    "pentagon": generate_pentagon,
    "dodecahedron": generate_dodecahedron,
    "c120": generate_120cell,
}
