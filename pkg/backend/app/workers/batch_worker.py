import asyncio
import logging
from typing import Any, Callable, List, Sequence

from ..core.config import settings

logger = logging.getLogger(__name__)


class BatchWorker:
    """배치 항목을 스레드에서 병렬 처리 (결과는 입력 순서 유지)"""

    def __init__(self, jobs: int = None):
        self.jobs = max(1, jobs or settings.BATCH_JOBS)

    async def _run_one(self, semaphore: asyncio.Semaphore, func: Callable, index: int, item: Any):
        async with semaphore:
            try:
                return await asyncio.to_thread(func, item)
            except Exception as e:
                logger.error(f"배치 항목 {index} 처리 오류: {e}")
                raise

    async def run(self, func: Callable[[Any], Any], items: Sequence[Any]) -> List[Any]:
        semaphore = asyncio.Semaphore(self.jobs)
        tasks = [self._run_one(semaphore, func, i, item) for i, item in enumerate(items)]
        results = await asyncio.gather(*tasks, return_exceptions=True)
        logger.info(f"배치 완료: {len(items)} 건, jobs={self.jobs}")
        return list(results)

    def run_sync(self, func: Callable[[Any], Any], items: Sequence[Any]) -> List[Any]:
        return asyncio.run(self.run(func, items))
