"""Shared fixtures for the simplest-cubic test suite"""

import pytest

from simplest_cubic.classify import BasisDescriptor
from simplest_cubic.field_core import FieldContext, make_context


@pytest.fixture(scope="session")
def ctx21() -> FieldContext:
    return make_context(21)


@pytest.fixture(scope="session")
def ctx30() -> FieldContext:
    return make_context(30)


@pytest.fixture(scope="session")
def b3() -> BasisDescriptor:
    return BasisDescriptor.bp(3, 1, 1)
