import math

import pytest


def trial_factor(n):
    """Prime factorization by plain trial division; independent of the sieve."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def trial_phi(n):
    r = n
    for p, _ in trial_factor(n):
        r -= r // p
    return r


def brute_cyclic_count(x):
    return sum(1 for n in range(1, x + 1) if math.gcd(n, trial_phi(n)) == 1)


@pytest.fixture(scope="session")
def oracle():
    return {"factor": trial_factor, "phi": trial_phi, "count": brute_cyclic_count}


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
