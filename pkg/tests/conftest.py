from fractions import Fraction

import pytest


def gram_square(coeffs, p, n):
    """Oracle: v^T G v in the basis (h_S, delta_n) with G = diag(2p-2, -(2n-2))."""
    gram = ((2 * p - 2, 0), (0, -(2 * n - 2)))
    return sum(Fraction(coeffs[i]) * gram[i][j] * coeffs[j] for i in range(2) for j in range(2))


def curve_coeffs(a, b, n):
    """``a h_S - b r_n`` written in (h_S, delta_n), using r_n = delta_n / (2n-2)."""
    return (Fraction(a), Fraction(-b, 2 * n - 2))


ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
