from itertools import permutations

import pytest


def leibniz_det(rows):
    """Signed sum over permutations; independent of the package code."""
    n = len(rows)
    total = 0
    for p in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        prod = 1
        for i in range(n):
            prod *= rows[i][p[i]]
        total += -prod if inversions % 2 else prod
    return total


def brute_permanent(rows):
    total = 0
    n = len(rows)
    for p in permutations(range(n)):
        prod = 1
        for i in range(n):
            prod *= rows[i][p[i]]
        total += prod
    return total


@pytest.fixture
def leibniz():
    return leibniz_det


@pytest.fixture
def brute_per():
    return brute_permanent
