"""Cohomology rings, Stiefel-Whitney classes, dual classes, and certificates."""

import pytest

from smallcover import charclass as cc
from smallcover import gf2
from smallcover.coloring import make_coloring


@pytest.fixture(scope="module")
def sample_sw(dodeca, dodeca_classes):
    return cc.total_sw(dodeca, dodeca_classes[0].representative)


def test_face_ring_dims_match_h_vector(dodeca, sample_sw):
    assert sample_sw.quotient.dims == (1, 9, 9, 1)


def test_face_ring_rejects_non_small_cover(pentagon):
    improper = make_coloring(pentagon, 2, [2, 2, 2, 1, 3])
    with pytest.raises(cc.NotSmallCoverError):
        cc.face_ring(pentagon, improper)


def test_pentagon_ring(pentagon):
    coloring = make_coloring(pentagon, 2, [2, 1, 2, 1, 3])
    sw = cc.total_sw(pentagon, coloring)
    assert sw.quotient.dims == (1, 3, 1)
    assert not sw.w[0].is_zero  # no orientable small cover over a pentagon here
    assert not sw.orientable


def test_w1_equals_even_weight_facet_sum(dodeca, dodeca_classes, sample_sw):
    coloring = dodeca_classes[0].representative
    evens, elem = cc.w1_hypersurface(dodeca, coloring, sample_sw.quotient)
    assert evens == sample_sw.even_facets
    assert elem.poly == sample_sw.w[0].poly


def test_top_class_vanishes_and_w2_is_w1_squared(sample_sw):
    w1, w2, w3 = sample_sw.w
    assert w3.is_zero
    assert cc.multiply(w1, w1).poly == w2.poly


def test_sq1_on_w2(dodeca, sample_sw):
    w1, w2, w3 = sample_sw.w
    assert cc.sq1(w2).poly == cc.add(cc.multiply(w1, w2), w3).poly


def test_sq1_is_a_derivation(sample_sw):
    q = sample_sw.quotient
    k = q.num_gens
    x = cc.element(q, frozenset({gf2.generator_monomial(k, 2)}), 1)
    y = cc.element(q, frozenset({gf2.generator_monomial(k, 5)}), 1)
    xy = cc.multiply(x, y)
    lhs = cc.sq1(xy)
    rhs = cc.add(cc.multiply(cc.sq1(x), y), cc.multiply(x, cc.sq1(y)))
    assert lhs.poly == rhs.poly


def test_sq1_degree_overflow(sample_sw):
    top = cc.element(
        sample_sw.quotient,
        frozenset({gf2.squarefree_monomial(12, [1, 2, 3])}),
        3,
    )
    with pytest.raises(cc.CharClassError, match="beyond"):
        cc.sq1(top)


def test_pinc_obstruction_flags(dodeca, dodeca_classes):
    # every dim-3 small cover has w1*w2 + w3 = w1^3 = 0: flags undetermined
    coloring = dodeca_classes[0].representative
    sw = cc.total_sw(dodeca, coloring)
    elem, is_pinc, is_spinc = cc.pinc_obstruction(dodeca, coloring, sw)
    assert elem.is_zero
    assert is_pinc is None
    assert is_spinc is (None if sw.orientable else False)


def test_find_dual_class_on_w2_nonzero_classes(dodeca, dodeca_classes):
    for cls in dodeca_classes:
        sw = cc.total_sw(dodeca, cls.representative)
        if sw.w[1].is_zero:
            with pytest.raises(cc.NoDualClassError):
                cc.find_dual_class(dodeca, cls.representative, sw=sw)
            continue
        c, product = cc.find_dual_class(dodeca, cls.representative, sw=sw)
        assert not product.is_zero
        # independent re-evaluation of w3 + w2*c
        c_elem = cc.class_vector_element(sw.quotient, c, 12)
        again = cc.add(sw.w[2], cc.multiply(sw.w[1], c_elem))
        assert again.poly == product.poly


def test_certificate_round_trip_and_replay(dodeca, c120, dodeca_classes):
    coloring = dodeca_classes[0].representative
    c, _ = cc.find_dual_class(dodeca, coloring)
    cert = cc.run_extension_pipeline(
        "dodecahedron", dodeca, coloring, c, "c120", c120, 1
    )
    assert cert.conclusions == ("ambient manifold is not pin^c",)
    text = cc.certificate_to_text(cert)
    again = cc.certificate_from_text(text)
    assert again.class_vector == cert.class_vector
    assert again.computed == cert.computed
    assert cc.replay_certificate(again) == []


def test_certificate_w1_strategy_orientable(dodeca, c120, dodeca_classes):
    coloring = dodeca_classes[0].representative
    evens = cc.even_weight_facets(coloring)
    c = tuple(1 if i in evens else 0 for i in range(1, 13))
    cert = cc.run_extension_pipeline(
        "dodecahedron", dodeca, coloring, c, "c120", c120, 1, goal=cc.GOAL_ORIENTABLE
    )
    assert "ambient manifold is orientable" in cert.conclusions
    assert dict(cert.computed)["ambient_even_weight_facets"] == "none"


def test_certificate_aborts_on_zero_obstruction(dodeca, c120, dodeca_classes):
    coloring = dodeca_classes[0].representative
    with pytest.raises(cc.CertificateError, match="base_w3_plus_w2c_nonzero"):
        cc.run_extension_pipeline(
            "dodecahedron", dodeca, coloring, (0,) * 12, "c120", c120, 1
        )


def test_replay_detects_tampering(dodeca, c120, dodeca_classes):
    coloring = dodeca_classes[0].representative
    c, _ = cc.find_dual_class(dodeca, coloring)
    cert = cc.run_extension_pipeline(
        "dodecahedron", dodeca, coloring, c, "c120", c120, 1
    )
    text = cc.certificate_to_text(cert)
    flipped = "".join("1" if b else "0" for b in (0,) * 12)
    bad = text.replace(
        "class_vector " + "".join(map(str, c)), "class_vector " + flipped
    )
    failures = cc.replay_certificate(cc.certificate_from_text(bad))
    assert any("base_w3_plus_w2c_nonzero" in f for f in failures)


def test_replay_detects_digest_mismatch(dodeca, c120, dodeca_classes):
    coloring = dodeca_classes[0].representative
    c, _ = cc.find_dual_class(dodeca, coloring)
    cert = cc.run_extension_pipeline(
        "dodecahedron", dodeca, coloring, c, "c120", c120, 1
    )
    cert.base_digest = "0" * 64
    assert cc.replay_certificate(cert) == ["base scheme digest mismatch"]
