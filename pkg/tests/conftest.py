from fractions import Fraction
from itertools import combinations

import pytest

from filiform.catalog import load_catalog

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def cat():
    return load_catalog()


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":abc"))):
        terminalreporter.write_line(line)


# --- oracles that share no code with the library ------------------------------

def numeric_table(mu, point):
    """``{(i, j): {l: Fraction}}`` for ``i < j`` at a rational point."""
    out = {}
    for (i, j), row in mu.table.items():
        vals = {l: c.evaluate(point) for l, c in row.items()}
        out[(i, j)] = {l: Fraction(v) for l, v in vals.items() if v}
    return out


def br(table, i, j):
    if i == j:
        return {}
    if i < j:
        return table.get((i, j), {})
    return {l: -c for l, c in table.get((j, i), {}).items()}


def jacobi_numeric(table, n):
    """Nonzero ``[[Xi,Xj],Xk] + cyclic`` coefficients, plain triple loop."""
    bad = []
    for i, j, k in combinations(range(1, n + 1), 3):
        acc = {}
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            for m, c in br(table, x, y).items():
                for l, d in br(table, m, z).items():
                    acc[l] = acc.get(l, 0) + c * d
        bad += [(i, j, k, l) for l, v in acc.items() if v]
    return bad
