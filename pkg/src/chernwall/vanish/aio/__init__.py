import asyncio
import typing

from chernwall.cohomology import DEFAULT_TRUNCATION, CohomologyRings
from chernwall.vanish import STAGES, Certificate, Pipeline, Stage


class AsyncPipeline:
    """
    Asyncio surface over ``Pipeline``. Stages run in worker threads; results come back in the
    same order as the sequential pipeline produces them.
    """

    def __init__(
        self,
        rings: typing.Optional[CohomologyRings] = None,
        *,
        truncation: int = DEFAULT_TRUNCATION,
        timings: bool = True,
        displays: typing.Optional[typing.Mapping[str, str]] = None,
    ) -> None:
        self._pipeline = Pipeline(rings, truncation=truncation, timings=timings, displays=displays)
        self._warm: typing.Optional[asyncio.Task] = None

    @property
    def pipeline(self) -> Pipeline:
        return self._pipeline

    async def _warm_up(self) -> None:
        if self._warm is None:
            self._warm = asyncio.ensure_future(asyncio.to_thread(self._pipeline.warm_up))
        await self._warm

    async def verify_stage(self, stage: Stage) -> Certificate:
        await self._warm_up()
        return await asyncio.to_thread(self._pipeline.verify_stage, stage)

    async def verify_stages(self) -> typing.List[Certificate]:
        await self._warm_up()
        results = await asyncio.gather(*(self.verify_stage(s) for s in STAGES))
        return list(results)

    async def verify_c7(self) -> Certificate:
        await self.verify_stages()
        return await asyncio.to_thread(self._pipeline.verify_c7)

    async def verify_c8(self) -> Certificate:
        await self.verify_stages()
        return await asyncio.to_thread(self._pipeline.verify_c8)

    async def verify_all(self) -> typing.List[Certificate]:
        stages = await self.verify_stages()
        c7, c8 = await asyncio.gather(
            asyncio.to_thread(self._pipeline.verify_c7),
            asyncio.to_thread(self._pipeline.verify_c8),
        )
        return [*stages, c7, c8]
