"""Combinatorial right-angled schemes: facet/vertex incidence tables.

A scheme records the facets of a compact right-angled polytope (or a
right-angled manifold with embedded facets) together with the table of
vertices, each vertex being the set of facets meeting there.  Everything
downstream (colorings, face rings, characteristic classes) depends only on
this incidence data; a set of facets has nonempty intersection exactly when
it is contained in some vertex.
"""

from __future__ import annotations

import hashlib
import itertools
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from importlib import resources
from math import comb


class SchemeError(Exception):
    """Malformed or invalid scheme data."""


BUILTIN_NAMES = ("pentagon", "dodecahedron", "c120")


@dataclass(frozen=True)
class RightAngledScheme:
    """Facet/vertex incidence of a right-angled scheme.

    Facets are labeled 1..num_facets.  Vertices are frozensets of facet
    labels, stored sorted lexicographically.
    """

    dim: int
    num_facets: int
    vertices: tuple[frozenset[int], ...]

    @cached_property
    def facet_vertices(self) -> dict[int, tuple[int, ...]]:
        """Facet label -> indices (0-based) of the vertices containing it."""
        out: dict[int, list[int]] = {f: [] for f in range(1, self.num_facets + 1)}
        for vi, v in enumerate(self.vertices):
            for f in v:
                out[f].append(vi)
        return {f: tuple(ids) for f, ids in out.items()}

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        """Facet label -> labels sharing at least one vertex with it."""
        out: dict[int, set[int]] = {f: set() for f in range(1, self.num_facets + 1)}
        for v in self.vertices:
            for i, j in itertools.combinations(v, 2):
                out[i].add(j)
                out[j].add(i)
        return {f: frozenset(s) for f, s in out.items()}

    @cached_property
    def vertex_set(self) -> frozenset[frozenset[int]]:
        return frozenset(self.vertices)

    def is_face(self, facets) -> bool:
        """A facet set has nonempty intersection iff it lies in some vertex."""
        fs = frozenset(facets)
        if len(fs) <= 1:
            return True
        return fs in self._faces

    @cached_property
    def _faces(self) -> frozenset[frozenset[int]]:
        seen: set[frozenset[int]] = set()
        for v in self.vertices:
            vs = sorted(v)
            for r in range(2, len(vs) + 1):
                for t in itertools.combinations(vs, r):
                    seen.add(frozenset(t))
        return frozenset(seen)


@dataclass(frozen=True)
class FaceRef:
    """A face of a scheme, given by the facets containing it.

    ``scheme`` is the face's own incidence table, with facets relabeled
    1..k'; ``facet_map[j-1]`` is the parent facet that face facet j came
    from (the facets adjacent to the face but not containing it).
    ``adjacent_bijection`` records whether the derived scheme passed all
    validity checks, i.e. whether the face's facets correspond one-to-one
    to adjacent parent facets.
    """

    parent: RightAngledScheme
    supp: frozenset[int]
    scheme: RightAngledScheme
    facet_map: tuple[int, ...]
    adjacent_bijection: bool


def _vertex_sort_key(v: frozenset[int]):
    return tuple(sorted(v))


def scheme_violations(dim: int, num_facets: int, vertices) -> list[str]:
    """All violated invariants, in check order (empty list means valid)."""
    problems: list[str] = []
    if dim < 0:
        return [f"dimension {dim} is negative"]
    if num_facets < 0:
        return [f"facet count {num_facets} is negative"]
    for vi, v in enumerate(vertices, start=1):
        if len(v) != dim:
            problems.append(f"vertex {vi} has {len(v)} facets, expected {dim}")
            return problems
        for f in v:
            if not 1 <= f <= num_facets:
                problems.append(f"vertex {vi} uses facet {f}, outside 1..{num_facets}")
                return problems
    if len(set(vertices)) != len(vertices):
        problems.append("duplicate vertex")
        return problems
    used = set().union(*vertices) if vertices else set()
    for f in range(1, num_facets + 1):
        if f not in used:
            problems.append(f"facet {f} appears in no vertex")
            return problems
    if dim >= 1:
        ridge_count: Counter = Counter()
        for v in vertices:
            for t in itertools.combinations(sorted(v), dim - 1):
                ridge_count[t] += 1
        for t, c in ridge_count.items():
            if c != 2:
                problems.append(
                    f"ridge condition fails: facet set {set(t) or '{}'} lies in {c} vertices, expected 2"
                )
                return problems
    if dim >= 2:
        adj: dict[int, set[int]] = {f: set() for f in range(1, num_facets + 1)}
        for v in vertices:
            for i, j in itertools.combinations(v, 2):
                adj[i].add(j)
                adj[j].add(i)
        if num_facets:
            seen = {1}
            queue = deque([1])
            while queue:
                f = queue.popleft()
                for g in adj[f]:
                    if g not in seen:
                        seen.add(g)
                        queue.append(g)
            if len(seen) != num_facets:
                problems.append("facet adjacency graph is disconnected")
                return problems
    return problems


def make_scheme(dim: int, num_facets: int, vertices) -> RightAngledScheme:
    """Normalize, validate and freeze a scheme; raises on the first violation."""
    verts = tuple(sorted((frozenset(v) for v in vertices), key=_vertex_sort_key))
    problems = scheme_violations(dim, num_facets, verts)
    if problems:
        raise SchemeError(problems[0])
    return RightAngledScheme(dim, num_facets, verts)


def serialize_scheme(s: RightAngledScheme) -> str:
    lines = [f"dim {s.dim}", f"facets {s.num_facets}"]
    for v in s.vertices:
        lines.append(" ".join(str(f) for f in sorted(v)))
    return "\n".join(lines) + "\n"


def load_scheme(text: str) -> RightAngledScheme:
    """Parse and validate the line-oriented scheme format."""
    dim = None
    num_facets = None
    vertices: list[frozenset[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if dim is None:
            if parts[0] != "dim" or len(parts) != 2:
                raise SchemeError(f"line {lineno}: expected 'dim <n>', got {raw!r}")
            try:
                dim = int(parts[1])
            except ValueError:
                raise SchemeError(f"line {lineno}: bad dimension {parts[1]!r}") from None
            continue
        if num_facets is None:
            if parts[0] != "facets" or len(parts) != 2:
                raise SchemeError(f"line {lineno}: expected 'facets <k>', got {raw!r}")
            try:
                num_facets = int(parts[1])
            except ValueError:
                raise SchemeError(f"line {lineno}: bad facet count {parts[1]!r}") from None
            continue
        try:
            facets = [int(p) for p in parts]
        except ValueError:
            raise SchemeError(f"line {lineno}: bad vertex line {raw!r}") from None
        vertices.append(frozenset(facets))
        if len(facets) != len(vertices[-1]):
            raise SchemeError(f"line {lineno}: repeated facet in vertex line {raw!r}")
    if dim is None or num_facets is None:
        raise SchemeError("missing 'dim' or 'facets' header")
    return make_scheme(dim, num_facets, vertices)


def scheme_digest(s: RightAngledScheme) -> str:
    return hashlib.sha256(serialize_scheme(s).encode()).hexdigest()


@lru_cache(maxsize=None)
def builtin_scheme(name: str) -> RightAngledScheme:
    """One of the bundled schemes: pentagon, dodecahedron, c120."""
    if name not in BUILTIN_NAMES:
        raise SchemeError(f"unknown builtin scheme {name!r}")
    text = resources.files("smallcover.data").joinpath(f"{name}.txt").read_text()
    return load_scheme(text)


def face(s: RightAngledScheme, supp) -> FaceRef:
    """The face with the given supporting facet set, as a scheme of its own."""
    supp = frozenset(supp)
    if not any(supp <= v for v in s.vertices):
        raise SchemeError(f"facet set {sorted(supp)} is not a face")
    sub = [v - supp for v in s.vertices if supp <= v]
    labels = sorted(set().union(*sub)) if sub and any(sub) else []
    relabel = {f: i + 1 for i, f in enumerate(labels)}
    verts = tuple(
        sorted((frozenset(relabel[f] for f in v) for v in sub), key=_vertex_sort_key)
    )
    dim = s.dim - len(supp)
    problems = scheme_violations(dim, len(labels), verts)
    scheme = RightAngledScheme(dim, len(labels), verts)
    return FaceRef(s, supp, scheme, tuple(labels), not problems)


def isomorphisms(
    a: RightAngledScheme, b: RightAngledScheme, limit: int | None = None
) -> list[tuple[int, ...]]:
    """All facet relabelings carrying a's vertex table onto b's.

    A result p satisfies p[i-1] = image of facet i.  Deterministic order;
    pass limit=1 for a single witness.
    """
    if (a.dim, a.num_facets, len(a.vertices)) != (b.dim, b.num_facets, len(b.vertices)):
        return []
    k = a.num_facets
    if k == 0:
        return [()] if a.vertices == b.vertices else []

    def profile(s, f):
        return (len(s.facet_vertices[f]), len(s.adjacency[f]))

    if sorted(profile(a, f) for f in range(1, k + 1)) != sorted(
        profile(b, f) for f in range(1, k + 1)
    ):
        return []

    # Static search order: highest-degree facet first, then maximize placed neighbors.
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < k:
        best = max(
            (f for f in range(1, k + 1) if f not in placed),
            key=lambda f: (len(a.adjacency[f] & placed), -f),
        )
        order.append(best)
        placed.add(best)
    pos_of = {f: i for i, f in enumerate(order)}
    prev_neighbors = [
        [g for g in a.adjacency[f] if pos_of[g] < i] for i, f in enumerate(order)
    ]
    # Vertices of `a` that become fully assigned at each position.
    triggers: list[list[tuple[int, ...]]] = [[] for _ in range(k)]
    for v in a.vertices:
        last = max(pos_of[f] for f in v)
        triggers[last].append(tuple(v))

    b_vertices = b.vertex_set
    candidates = {
        f: [g for g in range(1, k + 1) if profile(b, g) == profile(a, f)]
        for f in range(1, k + 1)
    }
    img = [0] * (k + 1)
    used = [False] * (k + 1)
    results: list[tuple[int, ...]] = []

    def extend(i: int):
        if limit is not None and len(results) >= limit:
            return
        if i == k:
            results.append(tuple(img[1:]))
            return
        f = order[i]
        f_adj = a.adjacency[f]
        for g in candidates[f]:
            if used[g]:
                continue
            ok = True
            for h in prev_neighbors[i]:
                if (img[h] in b.adjacency[g]) != (h in f_adj):
                    ok = False
                    break
            if not ok:
                continue
            img[f] = g
            used[g] = True
            if all(
                frozenset(img[x] for x in v) in b_vertices for v in triggers[i]
            ):
                extend(i + 1)
            img[f] = 0
            used[g] = False

    extend(0)
    results.sort()
    return results


@lru_cache(maxsize=32)
def automorphisms(s: RightAngledScheme) -> tuple[tuple[int, ...], ...]:
    """All facet permutations preserving the vertex table, identity included."""
    return tuple(isomorphisms(s, s))


def minimal_nonfaces(s: RightAngledScheme, max_size: int) -> list[frozenset[int]]:
    """Inclusion-minimal facet sets with empty intersection, sizes 2..max_size.

    Every proper subset of a returned set is a face.  Sets of size >= 3 are
    searched only inside cliques of the adjacency graph, since all their
    pairs must be faces.
    """
    if max_size < 2:
        raise ValueError("max_size must be at least 2")
    faces = s._faces
    out: list[frozenset[int]] = []
    k = s.num_facets
    adj = s.adjacency
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            if j not in adj[i]:
                out.append(frozenset((i, j)))
    for size in range(3, max_size + 1):
        for clique in _cliques(s, size):
            fs = frozenset(clique)
            if fs in faces:
                continue
            if all(
                frozenset(t) in faces for t in itertools.combinations(clique, size - 1)
            ):
                out.append(fs)
    out.sort(key=lambda t: (len(t), sorted(t)))
    return out


def _cliques(s: RightAngledScheme, size: int):
    adj = s.adjacency
    found: list[tuple[int, ...]] = []

    def grow(clique: tuple[int, ...], cands: frozenset[int]):
        if len(clique) == size:
            found.append(clique)
            return
        for c in sorted(cands):
            grow(clique + (c,), cands & adj[c] & frozenset(range(c + 1, s.num_facets + 1)))

    for i in range(1, s.num_facets + 1):
        grow((i,), adj[i] & frozenset(range(i + 1, s.num_facets + 1)))
    return found


def face_counts(s: RightAngledScheme) -> dict[int, int]:
    """Number of co-vertexed facet sets by size, sizes 1..dim."""
    seen: set[tuple[int, ...]] = set()
    for v in s.vertices:
        vs = sorted(v)
        for r in range(1, len(vs) + 1):
            seen.update(itertools.combinations(vs, r))
    counts = Counter(len(t) for t in seen)
    return {r: counts.get(r, 0) for r in range(1, s.dim + 1)}


def h_vector(s: RightAngledScheme) -> tuple[int, ...]:
    """h-vector of the nerve of the facets (valid for simplicial-sphere nerves)."""
    n = s.dim
    counts = face_counts(s)
    f = [1] + [counts[r] for r in range(1, n + 1)]
    h = []
    for j in range(n + 1):
        h.append(sum((-1) ** (j - i) * comb(n - i, j - i) * f[i] for i in range(j + 1)))
    return tuple(h)
