# -*- coding: utf-8 -*-

from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np
from pydantic import validate_call


_CHUNK_SIZE = 4096


@validate_call(config={"arbitrary_types_allowed": True})
def map_chunks(
    func: Callable[[np.ndarray, np.ndarray], np.ndarray],
    xs: np.ndarray,
    ps: np.ndarray,
    threads: int = 1,
) -> np.ndarray:
    """Evaluate a point-wise field over flat coordinate arrays in fixed-size chunks.

    Chunk boundaries depend only on the number of points, so the assembled
    result is identical for every worker count.

    Args:
        func    (Callable, required): Field `func(x, p) -> values` on 1-D arrays.
        xs      (ndarray , required): Flat x coordinates.
        ps      (ndarray , required): Flat p coordinates, same length as `xs`.
        threads (int     , optional): Maximum worker threads. Defaults to 1.

    Returns:
        ndarray: Concatenated values in input order.
    """

    _bounds = [
        (_start, min(_start + _CHUNK_SIZE, xs.size))
        for _start in range(0, xs.size, _CHUNK_SIZE)
    ]
    if not _bounds:
        return func(xs, ps)

    def _run(_bound: tuple[int, int]) -> np.ndarray:
        _lo, _hi = _bound
        return func(xs[_lo:_hi], ps[_lo:_hi])

    if (threads <= 1) or (len(_bounds) == 1):
        _parts = [_run(_bound) for _bound in _bounds]
    else:
        with ThreadPoolExecutor(max_workers=threads) as _executor:
            _parts = list(_executor.map(_run, _bounds))

    return np.concatenate(_parts)


__all__ = ["map_chunks"]
