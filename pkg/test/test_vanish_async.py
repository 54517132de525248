import pytest
import pytest_asyncio

from chernwall.vanish import STAGES
from chernwall.vanish.aio import AsyncPipeline


@pytest_asyncio.fixture(scope="module")
async def pipeline_async(rings):
    return AsyncPipeline(rings, timings=False)


@pytest.mark.asyncio(scope="module")
async def test_stages_keep_their_order(pipeline_async) -> None:
    certificates = await pipeline_async.verify_stages()

    assert [c.stage for c in certificates] == list(STAGES)
    assert all(c.match for c in certificates)


@pytest.mark.asyncio(scope="module")
async def test_verify_all(pipeline_async) -> None:
    certificates = await pipeline_async.verify_all()

    assert [c.stage for c in certificates] == [*STAGES, "c7", "c8"]
    assert all(c.match for c in certificates)
    assert certificates[-1].values["c"] == "-3"


@pytest.mark.asyncio(scope="module")
async def test_agrees_with_the_sequential_pipeline(pipeline_async, pipeline) -> None:
    concurrent = await pipeline_async.verify_c8()

    assert concurrent == pipeline.verify_c8()
