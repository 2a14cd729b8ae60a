"""Colorings: properness, classification, twists, faces, and extensions."""

import random

import pytest

from smallcover import gf2
from smallcover.coloring import (
    ColoringError,
    SearchBoundError,
    apply_twist,
    bits_to_int,
    canonical_form,
    components,
    enumerate_small_covers,
    extend_partial,
    extend_with_class,
    find_matching,
    format_class_list,
    format_coloring,
    induced_coloring,
    int_to_bits,
    is_proper,
    is_small_cover,
    make_coloring,
    normal_bundle_w1,
    parse_class_list,
    parse_coloring,
    verify_matching,
)
from smallcover.scheme import face


def pentagon_coloring(pentagon):
    return make_coloring(pentagon, 2, [2, 1, 2, 1, 3])


def test_bit_conventions():
    assert int_to_bits(0b101, 3) == "101"  # leftmost char is coordinate 1
    assert bits_to_int("101") == 0b101
    assert bits_to_int("110") == 0b011


def test_is_proper_and_witness(pentagon):
    good = pentagon_coloring(pentagon)
    ok, witness = is_proper(good)
    assert ok and witness is None
    bad = make_coloring(pentagon, 2, [2, 2, 2, 1, 3])
    ok, witness = is_proper(bad)
    assert not ok
    assert witness is not None
    v = bad.scheme.vertices[witness - 1]
    rows = [bad.colors[f - 1] for f in v]
    assert gf2.rref(rows, bad.m)[1] < len(v)  # dependent color set


def test_components_and_small_cover(pentagon):
    good = pentagon_coloring(pentagon)
    count, _ = components(good)
    assert count == 1
    assert is_small_cover(good)
    # m larger than the dimension: a disconnected double cover, not a small cover
    assert not is_small_cover(make_coloring(pentagon, 3, [2, 1, 2, 1, 4]))


def test_make_coloring_rejects_zero_and_length(pentagon):
    with pytest.raises(ColoringError):
        make_coloring(pentagon, 2, [0, 1, 2, 1, 3])
    with pytest.raises(ColoringError):
        make_coloring(pentagon, 2, [1, 2, 1, 3])


def test_pentagon_classification(pentagon):
    classes = enumerate_small_covers(pentagon)
    assert len(classes) == 1
    assert classes[0].orbit_size * classes[0].stabilizer_order == 10  # |Aut| = 10
    assert classes[0].stabilizer_order == 2


def test_dodecahedron_classification_counts(dodeca_classes):
    assert len(dodeca_classes) == 25
    total = sum(cls.orbit_size for cls in dodeca_classes)
    assert total == 2165  # colorings with the first vertex pinned to the standard basis


def test_canonical_form_twist_invariance(dodeca, dodeca_auts, dodeca_classes):
    rng = random.Random(7)
    coloring = dodeca_classes[3].representative
    for _ in range(25):
        sigma = rng.choice(dodeca_auts)
        matrix = random_invertible(rng, coloring.m)
        twisted = apply_twist(coloring, sigma, matrix)
        assert canonical_form(twisted).colors == canonical_form(coloring).colors


def random_invertible(rng, m):
    while True:
        rows = [rng.randrange(1, 1 << m) for _ in range(m)]
        if gf2.rref(rows, m)[1] == m:
            return rows


def test_distinct_classes_have_distinct_canonical_forms(dodeca_classes):
    forms = {canonical_form(cls.representative).colors for cls in dodeca_classes}
    assert len(forms) == len(dodeca_classes)


def test_enumeration_guard(c120):
    with pytest.raises(SearchBoundError):
        enumerate_small_covers(c120)


def test_extend_partial_fresh_vectors(pentagon):
    partial = {1: 1, 2: 2}
    col = extend_partial(pentagon, partial, 5)
    assert col.colors[0] == 1 and col.colors[1] == 2
    fresh = col.colors[2:]
    assert len(set(fresh)) == 3
    assert gf2.rref(list(col.colors), 5)[1] == 5


def test_induced_coloring_on_c120_facet(dodeca, c120, dodeca_classes):
    base = dodeca_classes[0].representative
    extended, matching = extend_with_class(base, [0] * 12, c120, 1)
    verify_matching(dodeca, c120, 1, matching)  # raises on failure
    fr = face(c120, {1})
    induced, count = induced_coloring(extended, fr)
    # with trivial class vector the induced colors are the base colors verbatim
    back = {fr.facet_map[j - 1]: induced.colors[j - 1] for j in range(1, 13)}
    assert tuple(back[matching[i]] for i in range(1, 13)) == base.colors


def test_normal_bundle_class_matches_request(dodeca, c120, dodeca_classes):
    base = dodeca_classes[0].representative
    c = (0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0)
    extended, matching = extend_with_class(base, c, c120, 1)
    ok, _ = is_proper(extended)
    assert ok
    count, _ = components(extended)
    assert count == 1
    normal = normal_bundle_w1(extended, 1)
    fr = face(c120, {1})
    by_parent = {fr.facet_map[j]: normal[j] for j in range(12)}
    assert tuple(by_parent[matching[i]] for i in range(1, 13)) == c


def test_find_matching_is_isomorphism(dodeca, c120):
    matching = find_matching(dodeca, c120, 5)
    verify_matching(dodeca, c120, 5, matching)  # raises on failure
    assert sorted(matching) == list(range(1, 13))


def test_coloring_round_trip(pentagon):
    col = pentagon_coloring(pentagon)
    assert parse_coloring(format_coloring(col), pentagon).colors == col.colors


def test_class_list_round_trip(pentagon):
    classes = enumerate_small_covers(pentagon)
    text = format_class_list(classes)
    entries = parse_class_list(text, pentagon)
    assert len(entries) == 1
    stab, coloring = entries[0]
    assert stab == classes[0].stabilizer_order
    assert coloring.colors == classes[0].representative.colors
