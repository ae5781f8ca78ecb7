from collections.abc import Callable, Sequence
from typing import TypeVar, cast

import anyio
import anyio.to_thread
from tqdm import tqdm

T = TypeVar("T")
R = TypeVar("R")


async def process_items(
    items: Sequence[T],
    process_func: Callable[[T], R],
    desc: str,
    workers: int = 1,
) -> list[R]:
    """Run a blocking function over items on a worker thread pool.

    Results are merged back by input index, so the output order never depends
    on scheduling.
    """
    results: list[R | None] = [None] * len(items)
    limiter = anyio.CapacityLimiter(max(1, workers))

    with tqdm(total=len(items), desc=desc, colour="cyan", disable=None) as pbar:

        async def process_with_result(item: T, idx: int) -> None:
            results[idx] = await anyio.to_thread.run_sync(process_func, item, limiter=limiter)
            pbar.update(1)

        async with anyio.create_task_group() as tg:
            for idx, item in enumerate(items):
                tg.start_soon(process_with_result, item, idx)

    return cast("list[R]", results)
