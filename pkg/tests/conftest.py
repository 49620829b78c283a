"""Test configuration."""

import pytest
import pytest_asyncio
from pearcey_gap.context import ComputeContext
from pearcey_gap.pearcey_fn import PearceyParams


@pytest_asyncio.fixture
async def context():
    """Create a compute context for testing."""
    ctx = ComputeContext(threads=2)
    await ctx.start()
    yield ctx
    await ctx.stop()


@pytest.fixture
def rho0():
    return PearceyParams(0.0)


@pytest.fixture
def rho1():
    return PearceyParams(1.0)
