"""
Shared fixtures: standard index categories, small nerves and a seeded RNG.
"""
import random

import pytest

from derivator_combinatorics.fincat import (
    FinCat,
    arrow_category,
    build_fincat,
    corner,
    ordinal_category,
    square,
)
from derivator_combinatorics.simplicial import SSet, nerve


@pytest.fixture
def sq() -> FinCat:
    """The square [1]x[1]."""
    return square()


@pytest.fixture
def cor() -> FinCat:
    """The corner: the square without (1, 1)."""
    return corner()


@pytest.fixture
def ar3() -> FinCat:
    """Ar[3], objects (i, j) with i <= j <= 3."""
    return arrow_category(ordinal_category(3))


@pytest.fixture
def z2() -> FinCat:
    """The group of order two as a one-object category."""
    return build_fincat(
        ["*"],
        [("id", "*", "*"), ("g", "*", "*")],
        [("g", "g", "id")],
        identities={"*": "id"},
    )


@pytest.fixture
def nerve_one() -> SSet:
    """nerve([1]) truncated at 3."""
    return nerve(ordinal_category(1), 3)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0)
