"""Proper colorings of right-angled schemes.

A coloring assigns a nonzero vector of GF(2)^m to every facet; it is
proper when the colors at each vertex are linearly independent.  Colors
are stored as ints (bit j = coordinate j+1).  This module covers
validation, connectivity, classification up to facet symmetry and linear
recoloring, induced colorings on faces, and the extension of a coloring
into a higher-dimensional ambient scheme with a prescribed normal class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import gf2
from .scheme import (
    FaceRef,
    RightAngledScheme,
    SchemeError,
    automorphisms,
    face,
    isomorphisms,
)


class ColoringError(Exception):
    """Ill-formed coloring or invalid coloring operation."""


class SearchBoundError(ColoringError):
    """Enumeration refused: scheme exceeds the search guard."""


ENUMERATION_FACET_GUARD = 16


@dataclass(frozen=True)
class Coloring:
    """Colors of the facets of a scheme, colors[i-1] being facet i's color."""

    scheme: RightAngledScheme
    m: int
    colors: tuple[int, ...]

    def color_bits(self, facet: int) -> str:
        return int_to_bits(self.colors[facet - 1], self.m)


@dataclass(frozen=True)
class ColoringClass:
    """An equivalence class of colorings under Aut(scheme) x GL(m, Z2)."""

    representative: Coloring  # canonical form
    orbit_size: int
    stabilizer_order: int
    stabilizer: tuple[tuple[int, ...], ...]


def int_to_bits(x: int, m: int) -> str:
    """Bitstring with the leftmost character carrying coordinate 1 (bit 0)."""
    return "".join("1" if (x >> j) & 1 else "0" for j in range(m))


def bits_to_int(s: str) -> int:
    x = 0
    for j, ch in enumerate(s):
        if ch == "1":
            x |= 1 << j
        elif ch != "0":
            raise ColoringError(f"bad bitstring {s!r}")
    return x


def make_coloring(scheme: RightAngledScheme, m: int, colors) -> Coloring:
    colors = tuple(colors)
    if len(colors) != scheme.num_facets:
        raise ColoringError(
            f"{len(colors)} colors for {scheme.num_facets} facets"
        )
    for i, c in enumerate(colors, start=1):
        if not 0 < c < (1 << m):
            raise ColoringError(f"facet {i} has color {c}, outside 1..2^{m}-1")
    return Coloring(scheme, m, colors)


def _independent(vectors) -> bool:
    pivots: dict[int, int] = {}
    for v in vectors:
        for p, row in pivots.items():
            if (v >> p) & 1:
                v ^= row
        if not v:
            return False
        pivots[gf2.lsb(v)] = v
    return True


def is_proper(coloring: Coloring):
    """(True, None) or (False, index of the first offending vertex, 1-based)."""
    colors = coloring.colors
    for vi, v in enumerate(coloring.scheme.vertices, start=1):
        if not _independent([colors[f - 1] for f in v]):
            return False, vi
    return True, None


def components(coloring: Coloring):
    """(number of connected components, echelon basis of span(image))."""
    rows, rk, _ = gf2.rref(list(coloring.colors), coloring.m)
    return 1 << (coloring.m - rk), rows


def is_small_cover(coloring: Coloring) -> bool:
    """Proper, color rank equal to the scheme dimension, and connected."""
    if coloring.m != coloring.scheme.dim:
        return False
    ok, _ = is_proper(coloring)
    if not ok:
        return False
    count, _ = components(coloring)
    return count == 1


def _coordinate_table(colors, m: int) -> dict[int, int]:
    """Coordinates of every spanned vector in the first-seen independent basis."""
    table = {0: 0}
    r = 0
    for x in colors:
        if x not in table:
            table.update({v ^ x: t | (1 << r) for v, t in table.items()})
            r += 1
    return table


def canonicalize(coloring: Coloring, auts=None):
    """Minimum over Aut(scheme) of the basis-normalized color tuple.

    Requires the colors to span GF(2)^m.  Returns (canonical colors,
    stabilizer permutations achieving it).
    """
    scheme = coloring.scheme
    if auts is None:
        auts = automorphisms(scheme)
    colors = coloring.colors
    k = scheme.num_facets
    best = None
    stab: list[tuple[int, ...]] = []
    for sigma in auts:
        permuted = [0] * k
        for i in range(k):
            permuted[sigma[i] - 1] = colors[i]
        table = _coordinate_table(permuted, coloring.m)
        if len(table) != 1 << coloring.m:
            raise ColoringError("colors do not span the color space")
        candidate = tuple(table[x] for x in permuted)
        if best is None or candidate < best:
            best = candidate
            stab = [sigma]
        elif candidate == best:
            stab.append(sigma)
    return best, tuple(stab)


def canonical_form(coloring: Coloring, auts=None) -> Coloring:
    best, _ = canonicalize(coloring, auts)
    return Coloring(coloring.scheme, coloring.m, best)


def apply_twist(coloring: Coloring, sigma, matrix_rows) -> Coloring:
    """Relabel facets by the automorphism sigma and recolor by an invertible matrix.

    matrix_rows[j] is row j of the matrix acting on color vectors:
    new coordinate j of x is dot(matrix_rows[j], x).
    """
    k = coloring.scheme.num_facets
    permuted = [0] * k
    for i in range(k):
        permuted[sigma[i] - 1] = coloring.colors[i]
    recolored = []
    for x in permuted:
        y = 0
        for j, row in enumerate(matrix_rows):
            y |= gf2.dot(row, x) << j
        recolored.append(y)
    return make_coloring(coloring.scheme, coloring.m, recolored)


def _search_order(scheme: RightAngledScheme, pinned):
    """Pinned facets first, then greedily close vertices as early as possible."""
    order = list(pinned)
    placed = set(order)
    k = scheme.num_facets
    while len(order) < k:
        def closing(f):
            return sum(
                1
                for vi in scheme.facet_vertices[f]
                if all(g in placed or g == f for g in scheme.vertices[vi])
            )
        best = max(
            (f for f in range(1, k + 1) if f not in placed),
            key=lambda f: (closing(f), len(scheme.adjacency[f] & placed), -f),
        )
        order.append(best)
        placed.add(best)
    return order


def enumerate_small_covers(
    scheme: RightAngledScheme,
    allow_large: bool = False,
    facet_order=None,
) -> list[ColoringClass]:
    """All small covers up to facet symmetry and linear recoloring.

    Backtracks over facets with colors in GF(2)^n \\ {0}; the facets of the
    first vertex are pinned to the standard basis, which selects one
    representative per recoloring orbit.  Results are deduplicated by
    canonical form and returned in sorted order (independent of the
    exploration order).
    """
    n = scheme.dim
    k = scheme.num_facets
    if k > ENUMERATION_FACET_GUARD and not allow_large:
        raise SearchBoundError(
            f"{k} facets exceeds the search guard ({ENUMERATION_FACET_GUARD}); "
            "pass allow_large to override"
        )
    auts = automorphisms(scheme)
    pinned = sorted(scheme.vertices[0])
    if facet_order is None:
        order = _search_order(scheme, pinned)
    else:
        order = list(facet_order)
        if sorted(order) != list(range(1, k + 1)) or order[:n] != pinned:
            raise ColoringError("facet_order must start with the first vertex's facets")
    pos_of = {f: i for i, f in enumerate(order)}
    checks: list[list[tuple[int, ...]]] = [[] for _ in range(k)]
    for v in scheme.vertices:
        last = max(pos_of[f] for f in v)
        checks[last].append(tuple(v))

    colors = [0] * k
    for idx, f in enumerate(pinned):
        colors[f - 1] = 1 << idx
    classes: dict[tuple[int, ...], ColoringClass] = {}
    total = 0

    def record():
        nonlocal total
        total += 1
        coloring = Coloring(scheme, n, tuple(colors))
        canon, stab = canonicalize(coloring, auts)
        if canon not in classes:
            classes[canon] = ColoringClass(
                Coloring(scheme, n, canon),
                len(auts) // len(stab),
                len(stab),
                stab,
            )

    def backtrack(pos: int):
        if pos == k:
            record()
            return
        f = order[pos]
        for v in range(1, 1 << n):
            colors[f - 1] = v
            if all(
                _independent([colors[x - 1] for x in vert]) for vert in checks[pos]
            ):
                backtrack(pos + 1)
        colors[f - 1] = 0

    # The pinned vertex is proper by construction; other early checks still apply.
    for pos in range(n):
        for vert in checks[pos]:
            if not _independent([colors[x - 1] for x in vert]):
                return []
    backtrack(n)
    out = sorted(classes.values(), key=lambda c: c.representative.colors)
    assert total == sum(c.orbit_size for c in out)
    return out


def extend_partial(scheme: RightAngledScheme, partial: dict[int, int], m: int) -> Coloring:
    """Complete a partial coloring with fresh basis vectors on new coordinates.

    Facets absent from `partial` get distinct basis vectors of a fresh
    summand, in facet order; the result is proper whenever the partial
    assignment was proper on its fully-assigned vertices.
    """
    k = scheme.num_facets
    for f, c in partial.items():
        if not 1 <= f <= k:
            raise ColoringError(f"facet {f} out of range")
        if not 0 < c < (1 << m):
            raise ColoringError(f"facet {f} assigned color {c}, outside 1..2^{m}-1")
    for vi, v in enumerate(scheme.vertices, start=1):
        if all(f in partial for f in v):
            if not _independent([partial[f] for f in v]):
                raise ColoringError(f"partial assignment improper at vertex {vi}")
    missing = [f for f in range(1, k + 1) if f not in partial]
    total_m = m + len(missing)
    colors = [0] * k
    for f, c in partial.items():
        colors[f - 1] = c
    for j, f in enumerate(missing):
        colors[f - 1] = 1 << (m + j)
    return make_coloring(scheme, total_m, colors)


def induced_coloring(coloring: Coloring, face_ref: FaceRef):
    """Coloring induced on a face, with its component count.

    The face's facets inherit the colors of the adjacent parent facets,
    composed with the quotient by the span of the supporting colors
    (realized by dropping the pivot coordinates of that span).
    """
    if face_ref.parent != coloring.scheme:
        raise ColoringError("face does not belong to the coloring's scheme")
    supp_colors = [coloring.colors[f - 1] for f in face_ref.supp]
    reducers = gf2.span_reducers(supp_colors)
    pivots = set(reducers)
    keep = [j for j in range(coloring.m) if j not in pivots]
    position = {j: t for t, j in enumerate(keep)}

    def project(x: int) -> int:
        x = gf2.reduce_vector(x, reducers)
        y = 0
        while x:
            b = gf2.lsb(x)
            y |= 1 << position[b]
            x &= x - 1
        return y

    sub_colors = [
        project(coloring.colors[parent_facet - 1])
        for parent_facet in face_ref.facet_map
    ]
    m_face = coloring.m - len(pivots)
    if face_ref.scheme.num_facets == 0:
        induced = Coloring(face_ref.scheme, m_face, ())
        return induced, 1 << m_face
    induced = make_coloring(face_ref.scheme, m_face, sub_colors)
    count, _ = components(induced)
    return induced, count


def find_matching(
    base: RightAngledScheme, ambient: RightAngledScheme, ambient_facet: int
) -> dict[int, int]:
    """Bijection from base facets to the facets adjacent to ambient_facet.

    The matching identifies base with the facet's face scheme; the first
    isomorphism in lexicographic order is used.
    """
    fr = face(ambient, {ambient_facet})
    if not fr.adjacent_bijection:
        raise SchemeError(
            f"facet {ambient_facet} does not have a one-to-one adjacent facet map"
        )
    isos = isomorphisms(base, fr.scheme, limit=1)
    if not isos:
        raise SchemeError("base scheme is not isomorphic to the chosen facet")
    iso = isos[0]
    return {i + 1: fr.facet_map[iso[i] - 1] for i in range(base.num_facets)}


def verify_matching(
    base: RightAngledScheme,
    ambient: RightAngledScheme,
    ambient_facet: int,
    matching: dict[int, int],
) -> None:
    """Check that a matching identifies base with the facet's face scheme."""
    fr = face(ambient, {ambient_facet})
    if not fr.adjacent_bijection:
        raise SchemeError(
            f"facet {ambient_facet} does not have a one-to-one adjacent facet map"
        )
    adjacent = set(fr.facet_map)
    if sorted(matching) != list(range(1, base.num_facets + 1)) or set(
        matching.values()
    ) != adjacent:
        raise SchemeError("matching is not a bijection onto the adjacent facets")
    ambient_vertices = ambient.vertex_set
    for v in base.vertices:
        image = frozenset(matching[f] for f in v) | {ambient_facet}
        if image not in ambient_vertices:
            raise SchemeError(f"matching does not carry vertex {sorted(v)} to a vertex")


def extend_with_class(
    coloring: Coloring,
    class_vector,
    ambient: RightAngledScheme,
    ambient_facet: int,
    matching: dict[int, int] | None = None,
):
    """Color the ambient scheme so the base embeds with normal class `class_vector`.

    Matched facets receive their base color with the class coefficient
    appended; the marked facet receives the fresh unit vector; all other
    facets are completed with distinct fresh basis vectors.  Returns
    (ambient coloring, matching).
    """
    base = coloring.scheme
    class_vector = tuple(class_vector)
    if len(class_vector) != base.num_facets:
        raise ColoringError("class vector length must equal the facet count")
    if matching is None:
        matching = find_matching(base, ambient, ambient_facet)
    else:
        verify_matching(base, ambient, ambient_facet, matching)
    m = coloring.m
    partial = {
        matching[i]: coloring.colors[i - 1] | (class_vector[i - 1] << m)
        for i in range(1, base.num_facets + 1)
    }
    partial[ambient_facet] = 1 << m
    extended = extend_partial(ambient, partial, m + 1)
    ok, vertex = is_proper(extended)
    if not ok:
        raise ColoringError(
            f"extension is improper at vertex {vertex} (input coloring was improper)"
        )
    return extended, matching


def normal_bundle_w1(coloring: Coloring, ambient_facet: int) -> tuple[int, ...]:
    """Monodromy coefficients of the normal class along the marked facet.

    Coefficient j (for face facet j) is the GF(2) dot product of the
    adjacent facet's color with the marked facet's color.
    """
    fr = face(coloring.scheme, {ambient_facet})
    if not fr.adjacent_bijection:
        raise SchemeError(
            f"facet {ambient_facet} does not have a one-to-one adjacent facet map"
        )
    marked = coloring.colors[ambient_facet - 1]
    return tuple(
        gf2.dot(coloring.colors[parent - 1], marked) for parent in fr.facet_map
    )


# --- coloring and class-list file formats ---


def format_coloring(coloring: Coloring) -> str:
    lines = [f"m {coloring.m}"]
    for i in range(1, coloring.scheme.num_facets + 1):
        lines.append(f"facet {i}: {coloring.color_bits(i)}")
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, scheme: RightAngledScheme) -> Coloring:
    m = None
    colors: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if m is None:
            if parts[0] != "m" or len(parts) != 2:
                raise ColoringError(f"line {lineno}: expected 'm <int>'")
            m = int(parts[1])
            continue
        if parts[0] != "facet" or len(parts) != 3 or not parts[1].endswith(":"):
            raise ColoringError(f"line {lineno}: expected 'facet <i>: <bits>'")
        idx = int(parts[1][:-1])
        colors[idx] = bits_to_int(parts[2])
    if m is None:
        raise ColoringError("missing 'm' header")
    if sorted(colors) != list(range(1, scheme.num_facets + 1)):
        raise ColoringError("facet lines do not cover 1..k exactly once")
    return make_coloring(scheme, m, [colors[i] for i in range(1, scheme.num_facets + 1)])


def format_class_list(classes) -> str:
    blocks = []
    for ordinal, cls in enumerate(classes, start=1):
        header = f"class {ordinal} stabilizer {cls.stabilizer_order}"
        blocks.append(header + "\n" + format_coloring(cls.representative))
    return "\n".join(blocks)


def parse_class_list(text: str, scheme: RightAngledScheme):
    """Colorings from a class-list file, as (stabilizer order, Coloring) pairs."""
    entries = []
    current: list[str] | None = None
    stab = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("class "):
            if current:
                entries.append((stab, parse_coloring("\n".join(current), scheme)))
            parts = line.split()
            if len(parts) != 4 or parts[2] != "stabilizer":
                raise ColoringError(f"bad class header {raw!r}")
            stab = int(parts[3])
            current = []
        else:
            if current is None:
                raise ColoringError("coloring line before any class header")
            current.append(line)
    if current:
        entries.append((stab, parse_coloring("\n".join(current), scheme)))
    return entries
