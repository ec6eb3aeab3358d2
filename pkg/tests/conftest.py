from __future__ import annotations

from fractions import Fraction
from math import isqrt

import pytest

ACCEPTANCE_LINES: list[str] = []


def fraction_det(matrix):
    """Plain Gaussian elimination over Q; deliberately independent of Bareiss."""
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pivot is None:
            return 0
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            factor = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= factor * m[k][j]
    assert det.denominator == 1
    return int(det)


def circulant_oracle(v):
    n = len(v)
    return fraction_det([[v[(i - j) % n] for j in range(n)] for i in range(n)])


def trial_factor(n):
    out = {}
    n = abs(n)
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def brute_two_squares(p):
    return sorted((a, b) for a in range(isqrt(p) + 1) for b in range(isqrt(p) + 1) if a * a + b * b == p)


@pytest.fixture
def oracle_det():
    return circulant_oracle


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
