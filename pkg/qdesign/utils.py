"""
Utilities

Worker fan-out, word enumeration and small numeric helpers shared by the modules.
"""

import asyncio
import itertools
from collections.abc import Callable, Iterator

import numpy as np


async def map_chunks(func: Callable, chunks: list) -> list:
    """Run func over every chunk in worker threads, results in chunk order."""
    return await asyncio.gather(*[asyncio.to_thread(func, chunk) for chunk in chunks])


def map_chunks_sync(func: Callable, items: list, threads: int) -> list:
    """Split items round-robin into `threads` chunks and map func over them.

    With one thread everything runs inline. Callers must combine the partial
    results in a way that does not depend on the split.
    """
    threads = max(1, min(threads, len(items)))
    if threads == 1:
        return [func(items)]
    chunks = [items[i::threads] for i in range(threads)]
    return asyncio.run(map_chunks(func, chunks))


def iter_words(q: int, length: int, chunk: int = 4096) -> Iterator[np.ndarray]:
    """All words of F_q^length in lexicographic order, as (m, length) code arrays."""
    products = itertools.product(range(q), repeat=length)
    while True:
        block = list(itertools.islice(products, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64).reshape(len(block), length)


def hamming_weight(words) -> np.ndarray:
    """Number of nonzero entries along the last axis."""
    return np.count_nonzero(np.asarray(words), axis=-1)


def lex_min_index(weights: np.ndarray, words: np.ndarray) -> int:
    """Row of least weight, ties broken by the lexicographically smallest word."""
    keys = [words[:, j] for j in range(words.shape[1] - 1, -1, -1)] + [weights]
    return int(np.lexsort(keys)[0])


def to_jsonable(obj):
    """Recursively turn numpy scalars/arrays, tuples and sets into plain JSON values."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(v) for v in obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    return obj
