"""
Shot partitioning and worker fan-out

Shots are split into fixed-size chunks and chunk i always draws from substream i,
so merged results depend only on (seed, shots, chunk_size), never on thread count.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, TypeVar

from config.config import config
from .rng import RngStream

logger = logging.getLogger(__name__)

T = TypeVar("T")


def plan_chunks(shots: int, chunk_size: Optional[int] = None) -> List[int]:
    size = chunk_size or config.montecarlo.chunk_size
    full, rest = divmod(shots, size)
    return [size] * full + ([rest] if rest else [])


def map_chunks(
    work: Callable[[int, RngStream], T],
    shots: int,
    rng: RngStream,
    threads: Optional[int] = None,
    chunk_size: Optional[int] = None,
) -> List[T]:
    """
    Run work(count, stream) over every chunk and return results in chunk order.

    Args:
        work: Callable receiving the chunk's shot count and its RNG substream
        shots: Total number of shots
        rng: Parent stream; chunk i uses rng.substream(i)
        threads: Worker cap (defaults to SYMTEST_THREADS)
        chunk_size: Shots per chunk (defaults to SYMTEST_CHUNK_SIZE)
    """
    sizes = plan_chunks(shots, chunk_size)
    workers = threads or config.compute.threads
    jobs = [(count, rng.substream(i)) for i, count in enumerate(sizes)]
    logger.debug(f"{shots} shots in {len(sizes)} chunks on {workers} worker(s)")

    if workers == 1:
        return [work(count, stream) for count, stream in jobs]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(lambda job: work(*job), jobs))
