"""Bit-set helpers.

Subsets of a fixed finite carrier {0..n-1} are stored as plain ints, one bit
per element.  Everything downstream (ideals, topologies, spectra) works on
these masks, which keeps the exhaustive verification suites cheap.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

BitMask = int


def full_mask(n: int) -> BitMask:
    return (1 << n) - 1


def bits(mask: BitMask) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> BitMask:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def is_subset(a: BitMask, b: BitMask) -> bool:
    return a & ~b == 0


def submasks(mask: BitMask) -> Iterator[BitMask]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask
