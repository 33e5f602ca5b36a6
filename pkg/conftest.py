"""
Shared pytest fixtures
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.group_integrals import RngStream  # noqa: E402
from src.rep_core import SubgroupKind  # noqa: E402

ALL_SUBGROUPS = [SubgroupKind.TRIVIAL, SubgroupKind.TORUS, SubgroupKind.ORTHOGONAL]


@pytest.fixture
def rng():
    return RngStream(seed=20240601)


@pytest.fixture(params=ALL_SUBGROUPS, ids=lambda kind: kind.value)
def subgroup(request):
    return request.param
