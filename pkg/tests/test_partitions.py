"""Partition enumeration against a brute-force constraint-scan oracle."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pi_kiln.partitions import PartitionVector, enumerate_constrained

# P(0)..P(12)
PARTITION_NUMBERS = (1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77)


def brute_force_vectors(k: int) -> set:
    """Independent oracle: scan all candidate multiplicity vectors and keep
    those satisfying both constraints directly.

    p_i can be at most k // i (else the weighted sum already exceeds k), which
    keeps the scan tractable through k = 12.
    """
    if k == 0:
        return {tuple()}
    axes = [range(0, k // i + 1) for i in range(1, k + 1)]
    hits = set()
    for p in itertools.product(*axes):
        if sum(i * m for i, m in enumerate(p, start=1)) != k:
            continue
        if sum(p) > k:  # p0 would be negative
            continue
        hits.add(p)
    return hits


def test_k0_empty_vector():
    vs = enumerate_constrained(0)
    assert len(vs) == 1
    assert vs[0].p == tuple()
    assert vs[0].p0 == 0


def test_k2_two_possibilities():
    vs = enumerate_constrained(2)
    assert {v.p for v in vs} == {(2, 0), (0, 1)}


def test_counts_match_oracle_through_12():
    for k in range(0, 13):
        got = enumerate_constrained(k)
        oracle = brute_force_vectors(k)
        assert len(got) == PARTITION_NUMBERS[k] == len(oracle), f"k={k}"
        assert {v.p for v in got} == oracle, f"k={k}"


def test_no_duplicates():
    for k in range(0, 13):
        vs = enumerate_constrained(k)
        assert len({v.p for v in vs}) == len(vs)


def test_deterministic_order_largest_part_descending():
    # k=4: [4], [3,1], [2,2], [2,1,1], [1,1,1,1]
    got = [v.p for v in enumerate_constrained(4)]
    assert got == [(0, 0, 0, 1), (1, 0, 1, 0), (0, 2, 0, 0), (2, 1, 0, 0), (4, 0, 0, 0)]
    for k in range(1, 10):
        parts = [v.parts() for v in enumerate_constrained(k)]
        assert parts == sorted(parts, reverse=True)


@given(st.integers(min_value=0, max_value=18))
@settings(max_examples=25, deadline=None)
def test_every_vector_satisfies_constraints(k):
    for v in enumerate_constrained(k):
        assert sum(i * m for i, m in enumerate(v.p, start=1)) == k
        assert v.p0 >= 0
        assert v.p0 + sum(v.p) == k


def test_invalid_vectors_rejected():
    with pytest.raises(ValueError):
        PartitionVector(2, (1, 1))  # weighted sum 3 != 2
    with pytest.raises(ValueError):
        PartitionVector(2, (0,))  # wrong length
    with pytest.raises(ValueError):
        PartitionVector(-1, tuple())
