"""Shared session fixtures: bundled schemes and the dodecahedral classification."""

import pytest

from smallcover.coloring import enumerate_small_covers
from smallcover.scheme import automorphisms, builtin_scheme


@pytest.fixture(scope="session")
def pentagon():
    return builtin_scheme("pentagon")


@pytest.fixture(scope="session")
def dodeca():
    return builtin_scheme("dodecahedron")


@pytest.fixture(scope="session")
def c120():
    return builtin_scheme("c120")


@pytest.fixture(scope="session")
def dodeca_auts(dodeca):
    return automorphisms(dodeca)


@pytest.fixture(scope="session")
def dodeca_classes(dodeca):
    return enumerate_small_covers(dodeca)
