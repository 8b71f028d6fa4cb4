"""Constrained multiplicity vectors: the integer partitions driving the
composition-coefficient sums.

A PartitionVector for order k holds multiplicities (p_1 ... p_k) with
sum(i * p_i) = k; the derived slack p0 = k - sum(p_i) is non-negative, so
p0 + p1 + ... + pk = k.  Enumeration is recursive descent over the largest
remaining part, emitting largest part descending then lexicographically,
which makes downstream golden files stable.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PartitionVector:
    k: int
    p: tuple

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError("order k must be >= 0")
        if len(self.p) != self.k:
            raise ValueError("multiplicity vector must have length k")
        if any(m < 0 for m in self.p):
            raise ValueError("multiplicities must be non-negative")
        if sum(i * m for i, m in enumerate(self.p, start=1)) != self.k:
            raise ValueError("weighted multiplicities must sum to k")
        if self.p0 < 0:
            raise ValueError("multiplicities sum above k")

    @property
    def p0(self) -> int:
        return self.k - sum(self.p)

    def parts(self) -> list:
        """Expanded part list, largest first, e.g. p2=1,p1=2 -> [2, 1, 1]."""
        out = []
        for size in range(self.k, 0, -1):
            out.extend([size] * self.p[size - 1])
        return out


def _descend(remaining: int, max_part: int, prefix: list, out: list, k: int) -> None:
    if remaining == 0:
        p = [0] * k
        for size in prefix:
            p[size - 1] += 1
        out.append(PartitionVector(k, tuple(p)))
        return
    for part in range(min(remaining, max_part), 0, -1):
        prefix.append(part)
        _descend(remaining - part, part, prefix, out, k)
        prefix.pop()


def enumerate_constrained(k: int) -> list:
    """All multiplicity vectors of order k, in deterministic order.

    The list has exactly P(k) entries (the partition number) and every entry
    satisfies both constraints by construction.
    """
    if k < 0:
        raise ValueError("order k must be >= 0")
    if k == 0:
        return [PartitionVector(0, tuple())]
    out: list = []
    _descend(k, k, [], out, k)
    return out
