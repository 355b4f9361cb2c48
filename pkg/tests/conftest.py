"""Shared test fixtures for all test modules."""

import json
from pathlib import Path

import pytest

from chainlab.config import Tolerances
from chainlab.models.graph import ChainGraphSpec
from chainlab.services.graph_core import build_chain_graph, half_graph

FIXTURES_DIR = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    """Return the path to the test fixtures directory."""
    return FIXTURES_DIR


@pytest.fixture
def tol():
    return Tolerances()


@pytest.fixture
def k2():
    """K₂ = H(1)."""
    return half_graph(1)


@pytest.fixture
def p4():
    """P₄ = H(2)."""
    return half_graph(2)


@pytest.fixture
def c4():
    """C₄ as the chain graph k=1, |U₁|=|V₁|=2."""
    return build_chain_graph(ChainGraphSpec(k=1, u_sizes=(2,), v_sizes=(2,)))


@pytest.fixture
def h7():
    return half_graph(7)


@pytest.fixture
def pattern_tables():
    """Printed prefix-sum tables; sums are ``[c, d]`` meaning ``c + d·ω``."""
    return json.loads((FIXTURES_DIR / "pattern_tables.json").read_text(encoding="utf-8"))
