import random

import pytest

from qtorb import generate_test_models, make_model

# Session-wide fuzz corpus sizes; acceptance wants at least 20 per dimension.
CORPUS_SEEDS = {2: 20240811, 3: 90125}
CORPUS_COUNT = 20


def wp112_model():
    """Triangle with an order-2 vertex; the smallest singular example."""
    return make_model(
        2, 3, [(0, 1), (1, 2), (0, 2)], [(1, 0), (0, 1), (-1, -2)], name="wp112"
    )


def cp2_model():
    """Smooth triangle model: no twisted sectors at all."""
    return make_model(
        2, 3, [(0, 1), (1, 2), (0, 2)], [(1, 0), (0, 1), (-1, -1)], name="cp2"
    )


def z3_model():
    """Tetrahedron with one order-3 vertex carrying ages 1 and 2."""
    return make_model(
        3,
        4,
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)],
        [(1, 0, 0), (0, 1, 0), (-1, -1, 3), (0, 0, -1)],
        name="z3-tetrahedron",
    )


def prism_model():
    """Triangular prism with an order-2 edge; exercises induced
    triangulations on proper subfaces of a blown-up face."""
    return make_model(
        3,
        5,
        [(0, 1, 3), (1, 2, 3), (0, 2, 3), (0, 1, 4), (1, 2, 4), (0, 2, 4)],
        [(1, 0, 0), (1, 2, 0), (0, 1, 0), (0, 0, 1), (0, 0, -1)],
        name="prism",
    )


@pytest.fixture
def wp112():
    return wp112_model()


@pytest.fixture
def cp2():
    return cp2_model()


@pytest.fixture
def z3():
    return z3_model()


@pytest.fixture
def prism():
    return prism_model()


@pytest.fixture(scope="session")
def fuzz_corpus():
    models = []
    for n, seed in CORPUS_SEEDS.items():
        batch = generate_test_models(seed, CORPUS_COUNT, n=n)
        assert len(batch) == CORPUS_COUNT
        models.extend(batch)
    return models


@pytest.fixture(scope="session")
def corpus(fuzz_corpus):
    """Fuzz corpus plus the hand-built golden models."""
    return fuzz_corpus + [wp112_model(), cp2_model(), z3_model(), prism_model()]


@pytest.fixture
def rng():
    return random.Random(1729)
