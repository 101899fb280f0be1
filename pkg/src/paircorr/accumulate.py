"""Compensated accumulation and deterministic chunked reduction.

The pair-sum engines partition work into fixed-size chunks, reduce each
chunk with numpy's pairwise summation, and combine chunk partials here in
chunk-index order with Neumaier compensation.  Results are therefore
bit-reproducible for a fixed chunk size, independent of thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np


def neumaier_sum(values: Iterable[float]) -> float:
    """Sum floats with Neumaier's improved Kahan compensation."""
    total = 0.0
    comp = 0.0
    for v in values:
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp


def neumaier_sum_complex(values: Iterable[complex]) -> complex:
    """Neumaier summation applied separately to real and imaginary parts."""
    vals = list(values)
    re = neumaier_sum(v.real for v in vals)
    im = neumaier_sum(v.imag for v in vals)
    return complex(re, im)


def reduce_chunks(
    chunks: Sequence,
    work: Callable,
    threads: int = 1,
):
    """Apply ``work`` to every chunk and combine partials in chunk order.

    ``work`` must return a complex (or float) partial sum.  With
    ``threads > 1`` chunks are evaluated by a thread pool (numpy releases
    the GIL in the heavy kernels); the reduction order stays fixed.
    """
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(work, chunks))
    else:
        partials = [work(c) for c in chunks]
    return neumaier_sum_complex(complex(p) for p in partials)


def chunk_ranges(n: int, size: int) -> list[tuple[int, int]]:
    """Contiguous [lo, hi) index ranges covering range(n)."""
    if size <= 0:
        raise ValueError("chunk size must be positive")
    return [(lo, min(lo + size, n)) for lo in range(0, n, size)]
