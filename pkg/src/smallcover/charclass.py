"""Stiefel-Whitney classes of small covers and non-pin^c certificates.

The mod-2 cohomology of a small cover is the graded quotient
Z2[a_1..a_k]/(I+J): I is generated by the squarefree monomials of
empty facet intersections, J by the linear forms of the coloring
(Davis-Januszkiewicz).  The total Stiefel-Whitney class is the product
of (1 + a_i) over all facets, so each degree-d class is the sum of all
squarefree degree-d monomials.  Certificates record the computed facts
of the codimension-1 extension pipeline separately from the facts
granted by theory.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from . import gf2
from .coloring import (
    Coloring,
    ColoringError,
    canonical_form,
    components,
    extend_with_class,
    induced_coloring,
    is_proper,
    is_small_cover,
    make_coloring,
    normal_bundle_w1,
    parse_coloring,
    format_coloring,
)
from .scheme import (
    RightAngledScheme,
    face,
    load_scheme,
    minimal_nonfaces,
    serialize_scheme,
)


class CharClassError(Exception):
    """Invalid input to a characteristic-class computation."""


class NotSmallCoverError(CharClassError):
    """Ring computations are only defined for small covers."""


class NoDualClassError(CharClassError):
    """No facet class pairs nontrivially with the top Stiefel-Whitney data."""


class CertificateError(Exception):
    """A required certificate fact failed, or a certificate is malformed."""


@dataclass(frozen=True)
class CohomologyElement:
    """A homogeneous ring element, stored in normal form."""

    poly: gf2.Polynomial
    degree: int
    quotient: gf2.GradedQuotient = field(compare=False, hash=False, repr=False)

    @property
    def is_zero(self) -> bool:
        return not self.poly

    def __str__(self) -> str:
        return gf2.format_poly(self.poly)


def element(quotient: gf2.GradedQuotient, poly: gf2.Polynomial, degree: int) -> CohomologyElement:
    nf = gf2.normal_form(poly, quotient)
    return CohomologyElement(nf, degree, quotient)


def multiply(x: CohomologyElement, y: CohomologyElement) -> CohomologyElement:
    return element(x.quotient, gf2.poly_mul(x.poly, y.poly), x.degree + y.degree)


def add(x: CohomologyElement, y: CohomologyElement) -> CohomologyElement:
    if x.degree != y.degree:
        raise CharClassError("cannot add elements of different degrees")
    return element(x.quotient, gf2.poly_add(x.poly, y.poly), x.degree)


@dataclass(frozen=True)
class SWData:
    """Reduced Stiefel-Whitney classes of a small cover with derived flags."""

    coloring: Coloring
    quotient: gf2.GradedQuotient
    w: tuple[CohomologyElement, ...]  # w[d-1] is the degree-d class
    orientable: bool
    spin: bool
    pinc_element: CohomologyElement  # w1*w2 + w3, the mod-2 pin^c obstruction
    even_facets: tuple[int, ...]


def face_ring(scheme: RightAngledScheme, coloring: Coloring) -> gf2.GradedQuotient:
    """The graded quotient computing the mod-2 cohomology of a small cover."""
    if coloring.scheme != scheme:
        raise CharClassError("coloring does not belong to the scheme")
    if not is_small_cover(coloring):
        raise NotSmallCoverError("not a small cover")
    n = scheme.dim
    k = scheme.num_facets
    i_gens = [
        frozenset({gf2.squarefree_monomial(k, t)})
        for t in minimal_nonfaces(scheme, n + 1)
    ]
    j_gens = []
    for j in range(n):
        gen = frozenset(
            gf2.generator_monomial(k, i)
            for i in range(1, k + 1)
            if (coloring.colors[i - 1] >> j) & 1
        )
        j_gens.append(gen)
    quotient = gf2.build_quotient(k, n, i_gens, j_gens)
    if quotient.dims[n] != 1:
        raise CharClassError(
            f"top-degree dimension is {quotient.dims[n]}, expected 1 (invalid input data)"
        )
    return quotient


def even_weight_facets(coloring: Coloring) -> tuple[int, ...]:
    """Facets whose color has an even number of ones (in the given coordinates)."""
    return tuple(
        i
        for i in range(1, coloring.scheme.num_facets + 1)
        if coloring.colors[i - 1].bit_count() % 2 == 0
    )


def w1_hypersurface(
    scheme: RightAngledScheme,
    coloring: Coloring,
    quotient: gf2.GradedQuotient | None = None,
):
    """(even-weight facet set, degree-1 class when a ring is available).

    The first Stiefel-Whitney class of any real toric manifold over the
    scheme is the sum of the hypersurfaces dual to the even-weight facets;
    the manifold is orientable iff that set is empty.
    """
    ok, vertex = is_proper(coloring)
    if not ok:
        raise CharClassError(f"coloring improper at vertex {vertex}")
    evens = even_weight_facets(coloring)
    elem = None
    if quotient is not None:
        k = scheme.num_facets
        poly = frozenset(gf2.generator_monomial(k, i) for i in evens)
        elem = element(quotient, poly, 1)
    return evens, elem


def total_sw(scheme: RightAngledScheme, coloring: Coloring) -> SWData:
    """All reduced Stiefel-Whitney classes of the small cover, with flags."""
    quotient = face_ring(scheme, coloring)
    n = scheme.dim
    k = scheme.num_facets
    w = []
    for d in range(1, n + 1):
        poly = frozenset(
            gf2.squarefree_monomial(k, s)
            for s in _subsets(range(1, k + 1), d)
        )
        w.append(element(quotient, poly, d))
    orientable = w[0].is_zero
    spin = orientable and n >= 2 and w[1].is_zero
    if n >= 3:
        pinc = add(multiply(w[0], w[1]), w[2])
    else:
        # the degree-3 obstruction vanishes identically below dimension 3
        pinc = CohomologyElement(frozenset(), 3, quotient)
    return SWData(
        coloring,
        quotient,
        tuple(w),
        orientable,
        spin,
        pinc,
        even_weight_facets(coloring),
    )


def _subsets(items, d):
    import itertools

    return itertools.combinations(items, d)


def sq1(x: CohomologyElement) -> CohomologyElement:
    """First Steenrod square: the derivation sending each generator to its square."""
    if x.degree + 1 > x.quotient.max_degree:
        raise CharClassError(
            f"Sq^1 would land in degree {x.degree + 1}, beyond the ring's top degree"
        )
    out: set = set()
    for m in x.poly:
        for j, e in enumerate(m):
            if e % 2:
                bumped = m[:j] + (e + 1,) + m[j + 1 :]
                out ^= {bumped}
    return element(x.quotient, frozenset(out), x.degree + 1)


def pinc_obstruction(scheme: RightAngledScheme, coloring: Coloring, sw: SWData | None = None):
    """(w1*w2 + w3, is_pinc, is_spinc); flags are one-sided (False or None).

    A nonzero element certifies the absence of a pin^c structure; a zero
    element decides nothing about the integral obstruction, so the flags
    stay undetermined (None) in that case.
    """
    if sw is None:
        sw = total_sw(scheme, coloring)
    elem = sw.pinc_element
    is_pinc = False if not elem.is_zero else None
    if not elem.is_zero:
        is_spinc = False
    elif not sw.orientable:
        is_spinc = False
    else:
        is_spinc = None
    return elem, is_pinc, is_spinc


def find_dual_class(
    scheme: RightAngledScheme,
    coloring: Coloring,
    target_degree: int | None = None,
    sw: SWData | None = None,
):
    """A facet class c with w_d + w_{d-1}*c nonzero, scanning generators in order.

    Returns (coefficient vector over facets, the product's normal form).
    For d equal to the dimension, Poincare duality guarantees success
    whenever w_{d-1} or w_d is nonzero.
    """
    if sw is None:
        sw = total_sw(scheme, coloring)
    n = scheme.dim
    d = target_degree if target_degree is not None else n
    if not 2 <= d <= n:
        raise CharClassError(f"target degree {d} out of range 2..{n}")
    w_top = sw.w[d - 1]
    w_prev = sw.w[d - 2]
    k = scheme.num_facets
    if w_prev.is_zero and w_top.is_zero:
        raise NoDualClassError(f"w{d - 1} and w{d} both vanish")
    for i in range(1, k + 1):
        gen = element(sw.quotient, frozenset({gf2.generator_monomial(k, i)}), 1)
        product = add(w_top, multiply(w_prev, gen))
        if not product.is_zero:
            c = tuple(1 if j == i else 0 for j in range(1, k + 1))
            return c, product
    if not w_top.is_zero:
        return (0,) * k, w_top
    raise NoDualClassError(
        f"no facet generator pairs nontrivially with w{d - 1}"
    )


def class_vector_element(
    quotient: gf2.GradedQuotient, class_vector, k: int
) -> CohomologyElement:
    poly = frozenset(
        gf2.generator_monomial(k, i)
        for i in range(1, k + 1)
        if class_vector[i - 1]
    )
    return element(quotient, poly, 1)


# --- certificates ---

GOAL_NONPINC = "nonpinc"
GOAL_ORIENTABLE = "orientable"

_GRANTED_NONPINC = (
    "for a codimension-1 embedding, the restriction of w3 of the ambient manifold "
    "equals w3 + w2 * w1(normal bundle) of the submanifold (Whitney sum formula); "
    "a nonzero restriction makes w3 of the ambient manifold nonzero",
    "for a closed 4-manifold, w1*w2 = 0 (Wu formula), hence Sq^1(w2) = w1*w2 + w3 = w3",
    "Sq^1(w2) is the mod-2 reduction of the integral class W3, "
    "so w3 != 0 implies W3 != 0",
    "W3 = 0 is equivalent to the existence of a pin^c structure",
)

_GRANTED_ORIENTABLE = (
    "the first Stiefel-Whitney class of a real toric manifold over a polytope is the "
    "sum of the hypersurfaces dual to the even-weight facets; an empty set means "
    "the manifold is orientable",
)


@dataclass
class Certificate:
    """Replayable record of one extension-pipeline run."""

    goal: str
    base_name: str
    base_scheme: RightAngledScheme
    base_digest: str
    ambient_name: str
    ambient_scheme: RightAngledScheme
    ambient_digest: str
    base_coloring: Coloring
    class_vector: tuple[int, ...]
    ambient_facet: int
    matching: dict[int, int]
    ambient_coloring: Coloring
    computed: list[tuple[str, str]]
    granted: tuple[str, ...]
    conclusions: tuple[str, ...]


def _digest(scheme: RightAngledScheme) -> str:
    return hashlib.sha256(serialize_scheme(scheme).encode()).hexdigest()


def _compute_facts(
    base: RightAngledScheme,
    base_coloring: Coloring,
    class_vector,
    ambient: RightAngledScheme,
    ambient_facet: int,
    matching: dict[int, int],
    ambient_coloring: Coloring,
) -> list[tuple[str, str]]:
    """Recompute every certificate fact from the recorded inputs."""
    facts: list[tuple[str, str]] = []
    ok, _ = is_proper(ambient_coloring)
    facts.append(("ambient_coloring_proper", _bool(ok)))
    count, _ = components(ambient_coloring)
    facts.append(("ambient_coloring_connected", _bool(count == 1)))

    fr = face(ambient, {ambient_facet})
    induced, _ = induced_coloring(ambient_coloring, fr)
    # Pull the induced coloring back to the base labeling through the matching,
    # compressed to the span of its colors (a linear isomorphism, so the
    # equivalence class is unchanged).
    back = {fr.facet_map[j - 1]: induced.colors[j - 1] for j in range(1, induced.scheme.num_facets + 1)}
    try:
        raw = [back[matching[i]] for i in range(1, base.num_facets + 1)]
        rows, rk, pivots = gf2.rref(raw, induced.m)
        compressed = [
            sum(((v >> p) & 1) << t for t, p in enumerate(pivots)) for v in raw
        ]
        pulled = make_coloring(base, rk, compressed)
        same = (
            rk == base_coloring.m
            and canonical_form(pulled).colors == canonical_form(base_coloring).colors
        )
    except (KeyError, ColoringError):
        same = False
    facts.append(("induced_coloring_matches_base", _bool(same)))

    normal = normal_bundle_w1(ambient_coloring, ambient_facet)
    normal_by_parent = {fr.facet_map[j]: normal[j] for j in range(len(normal))}
    matches_c = all(
        normal_by_parent.get(matching[i]) == class_vector[i - 1]
        for i in range(1, base.num_facets + 1)
    )
    facts.append(("normal_class_equals_c", _bool(matches_c)))

    sw = total_sw(base, base_coloring)
    c_elem = class_vector_element(sw.quotient, class_vector, base.num_facets)
    obstruction = add(sw.w[base.dim - 1], multiply(sw.w[base.dim - 2], c_elem))
    facts.append(("base_w3_plus_w2c_nonzero", _bool(not obstruction.is_zero)))

    evens = even_weight_facets(ambient_coloring)
    facts.append(
        ("ambient_even_weight_facets", " ".join(map(str, evens)) if evens else "none")
    )
    return facts


def _bool(b: bool) -> str:
    return "true" if b else "false"


def build_certificate(
    base_name: str,
    base: RightAngledScheme,
    base_coloring: Coloring,
    class_vector,
    ambient_name: str,
    ambient: RightAngledScheme,
    ambient_facet: int,
    matching: dict[int, int],
    ambient_coloring: Coloring,
    goal: str = GOAL_NONPINC,
) -> Certificate:
    """Assemble and check a certificate; aborts on any failing required fact."""
    class_vector = tuple(class_vector)
    facts = _compute_facts(
        base, base_coloring, class_vector, ambient, ambient_facet, matching, ambient_coloring
    )
    values = dict(facts)
    required = [
        "ambient_coloring_proper",
        "ambient_coloring_connected",
        "induced_coloring_matches_base",
        "normal_class_equals_c",
    ]
    if goal == GOAL_NONPINC:
        required.append("base_w3_plus_w2c_nonzero")
    elif goal != GOAL_ORIENTABLE:
        raise CertificateError(f"unknown goal {goal!r}")
    for name in required:
        if values[name] == "false":
            raise CertificateError(f"required fact failed: {name}")
    orientable = values["ambient_even_weight_facets"] == "none"
    if goal == GOAL_ORIENTABLE and not orientable:
        raise CertificateError("required fact failed: ambient_even_weight_facets empty")

    conclusions: list[str] = []
    granted: list[str] = []
    if goal == GOAL_NONPINC:
        granted.extend(_GRANTED_NONPINC)
        conclusions.append("ambient manifold is not pin^c")
        if orientable:
            granted.extend(_GRANTED_ORIENTABLE)
            conclusions.append("ambient manifold is orientable, hence not spin^c")
    else:
        granted.extend(_GRANTED_ORIENTABLE)
        conclusions.append("ambient manifold is orientable")
        if values["base_w3_plus_w2c_nonzero"] == "true":
            granted.extend(_GRANTED_NONPINC)
            conclusions.append("ambient manifold is not pin^c")
    return Certificate(
        goal=goal,
        base_name=base_name,
        base_scheme=base,
        base_digest=_digest(base),
        ambient_name=ambient_name,
        ambient_scheme=ambient,
        ambient_digest=_digest(ambient),
        base_coloring=base_coloring,
        class_vector=class_vector,
        ambient_facet=ambient_facet,
        matching=dict(matching),
        ambient_coloring=ambient_coloring,
        computed=facts,
        granted=tuple(granted),
        conclusions=tuple(conclusions),
    )


def run_extension_pipeline(
    base_name: str,
    base: RightAngledScheme,
    base_coloring: Coloring,
    class_vector,
    ambient_name: str,
    ambient: RightAngledScheme,
    ambient_facet: int,
    goal: str = GOAL_NONPINC,
) -> Certificate:
    """Extend the base coloring into the ambient scheme and certify the result."""
    ambient_coloring, matching = extend_with_class(
        base_coloring, class_vector, ambient, ambient_facet
    )
    return build_certificate(
        base_name,
        base,
        base_coloring,
        class_vector,
        ambient_name,
        ambient,
        ambient_facet,
        matching,
        ambient_coloring,
        goal=goal,
    )


def certificate_to_text(cert: Certificate) -> str:
    lines = [f"CERTIFICATE extension v1 goal {cert.goal}", "[INPUT]"]
    lines.append(f"base_scheme {cert.base_name}")
    lines.append(f"base_digest sha256:{cert.base_digest}")
    lines.append("begin base_scheme_data")
    lines.append(serialize_scheme(cert.base_scheme).rstrip("\n"))
    lines.append("end base_scheme_data")
    lines.append(f"ambient_scheme {cert.ambient_name}")
    lines.append(f"ambient_digest sha256:{cert.ambient_digest}")
    lines.append("begin ambient_scheme_data")
    lines.append(serialize_scheme(cert.ambient_scheme).rstrip("\n"))
    lines.append("end ambient_scheme_data")
    lines.append("begin base_coloring")
    lines.append(format_coloring(cert.base_coloring).rstrip("\n"))
    lines.append("end base_coloring")
    lines.append("class_vector " + "".join(str(b) for b in cert.class_vector))
    lines.append(f"ambient_facet {cert.ambient_facet}")
    for i in sorted(cert.matching):
        lines.append(f"match {i} -> {cert.matching[i]}")
    lines.append("[COMPUTED]")
    lines.append("begin ambient_coloring")
    lines.append(format_coloring(cert.ambient_coloring).rstrip("\n"))
    lines.append("end ambient_coloring")
    for name, value in cert.computed:
        lines.append(f"fact {name}: {value}")
    lines.append("[GRANTED]")
    for g in cert.granted:
        lines.append(f"granted: {g}")
    lines.append("[CONCLUSION]")
    for c in cert.conclusions:
        lines.append(c)
    return "\n".join(lines) + "\n"


def certificate_from_text(text: str) -> Certificate:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("CERTIFICATE extension v1 goal "):
        raise CertificateError("missing or unsupported certificate header")
    goal = lines[0].split()[-1]
    fields: dict[str, str] = {}
    blocks: dict[str, list[str]] = {}
    matching: dict[int, int] = {}
    computed: list[tuple[str, str]] = []
    granted: list[str] = []
    conclusions: list[str] = []
    section = None
    block: str | None = None
    for raw in lines[1:]:
        line = raw.rstrip()
        if block is not None:
            if line == f"end {block}":
                block = None
            else:
                blocks[block].append(line)
            continue
        if not line:
            continue
        if line in ("[INPUT]", "[COMPUTED]", "[GRANTED]", "[CONCLUSION]"):
            section = line
            continue
        if line.startswith("begin "):
            block = line[len("begin "):]
            blocks[block] = []
            continue
        if section == "[GRANTED]":
            if not line.startswith("granted: "):
                raise CertificateError(f"bad granted line {line!r}")
            granted.append(line[len("granted: "):])
            continue
        if section == "[CONCLUSION]":
            conclusions.append(line)
            continue
        if line.startswith("fact "):
            body = line[len("fact "):]
            name, _, value = body.partition(": ")
            computed.append((name, value))
            continue
        if line.startswith("match "):
            parts = line.split()
            matching[int(parts[1])] = int(parts[3])
            continue
        key, _, value = line.partition(" ")
        fields[key] = value
    try:
        base = load_scheme("\n".join(blocks["base_scheme_data"]))
        ambient = load_scheme("\n".join(blocks["ambient_scheme_data"]))
        base_coloring = parse_coloring("\n".join(blocks["base_coloring"]), base)
        ambient_coloring = parse_coloring("\n".join(blocks["ambient_coloring"]), ambient)
        class_vector = tuple(int(ch) for ch in fields["class_vector"])
        ambient_facet = int(fields["ambient_facet"])
        base_digest = fields["base_digest"].removeprefix("sha256:")
        ambient_digest = fields["ambient_digest"].removeprefix("sha256:")
    except (KeyError, ValueError) as exc:
        raise CertificateError(f"malformed certificate: {exc}") from exc
    return Certificate(
        goal=goal,
        base_name=fields.get("base_scheme", "?"),
        base_scheme=base,
        base_digest=base_digest,
        ambient_name=fields.get("ambient_scheme", "?"),
        ambient_scheme=ambient,
        ambient_digest=ambient_digest,
        base_coloring=base_coloring,
        class_vector=class_vector,
        ambient_facet=ambient_facet,
        matching=matching,
        ambient_coloring=ambient_coloring,
        computed=computed,
        granted=tuple(granted),
        conclusions=tuple(conclusions),
    )


def replay_certificate(cert: Certificate) -> list[str]:
    """Recompute every COMPUTED fact; returns the list of failing statements."""
    failures: list[str] = []
    if _digest(cert.base_scheme) != cert.base_digest:
        failures.append("base scheme digest mismatch")
    if _digest(cert.ambient_scheme) != cert.ambient_digest:
        failures.append("ambient scheme digest mismatch")
    if failures:
        return failures
    try:
        recomputed = dict(
            _compute_facts(
                cert.base_scheme,
                cert.base_coloring,
                cert.class_vector,
                cert.ambient_scheme,
                cert.ambient_facet,
                cert.matching,
                cert.ambient_coloring,
            )
        )
    except Exception as exc:  # malformed data surfaces as a replay failure
        return [f"replay error: {exc}"]
    for name, recorded in cert.computed:
        if name not in recomputed:
            failures.append(f"unknown fact {name}")
        elif recomputed[name] != recorded:
            failures.append(
                f"fact {name}: recorded {recorded}, recomputed {recomputed[name]}"
            )
    required = {
        "ambient manifold is not pin^c": "base_w3_plus_w2c_nonzero",
    }
    recorded_values = dict(cert.computed)
    for conclusion in cert.conclusions:
        fact = required.get(conclusion)
        if fact and recorded_values.get(fact) != "true":
            failures.append(f"conclusion {conclusion!r} lacks its supporting fact")
    return failures
