"""Compensated summation and deterministic chunked reductions.

All series in this package are accumulated with Kahan-Babuska (Neumaier)
compensation in a fixed order, so results are reproducible bit for bit.
The chunked reducer optionally fans chunk sums out to a thread pool; the
chunk boundaries and the combination order depend only on the input
sequence, never on the thread count, so any thread count produces the
same bits.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

_CHUNK = 1024


def kahan_sum(values: Iterable[float]) -> float:
    """Neumaier-compensated sum of real values, in iteration order."""
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


def kahan_sum_complex(values: Iterable[complex]) -> complex:
    """Compensated sum of complex values (independent real/imag tracks)."""
    re_t = re_c = im_t = im_c = 0.0
    for v in values:
        x = v.real
        t = re_t + x
        if abs(re_t) >= abs(x):
            re_c += (re_t - t) + x
        else:
            re_c += (x - t) + re_t
        re_t = t
        y = v.imag
        t = im_t + y
        if abs(im_t) >= abs(y):
            im_c += (im_t - t) + y
        else:
            im_c += (y - t) + im_t
        im_t = t
    return complex(re_t + re_c, im_t + im_c)


def chunked_sum_complex(
    items: Sequence,
    term: Callable[[object], complex],
    threads: int = 1,
) -> complex:
    """Deterministic reduction of ``term(item)`` over ``items``.

    Items are split into fixed-size chunks; each chunk is compensated-summed
    on its own, and the chunk results are combined in chunk order with a
    second compensated pass.  The value is therefore identical for every
    ``threads`` setting, including 1.
    """
    chunks = [items[i:i + _CHUNK] for i in range(0, len(items), _CHUNK)]

    def chunk_sum(chunk) -> complex:
        return kahan_sum_complex(term(it) for it in chunk)

    if threads <= 1 or len(chunks) <= 1:
        partials = [chunk_sum(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(chunk_sum, chunks))
    return kahan_sum_complex(partials)
