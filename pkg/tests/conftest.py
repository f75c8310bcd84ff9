import pytest

import mubgeo as M

# verdict lines collected by the acceptance suite, echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def fields():
    cache = {}

    def get(p, n):
        if (p, n) not in cache:
            cache[(p, n)] = M.Field(p, n)
        return cache[(p, n)]

    return get


@pytest.fixture(scope="session")
def rings():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = M.GaloisRing(n)
        return cache[n]

    return get


@pytest.fixture(scope="session")
def families(fields, rings):
    """Cached family builder keyed by (construction, *params)."""
    cache = {}

    def get(construction, *args):
        key = (construction,) + args
        if key not in cache:
            if construction == "planar":
                p, n = args
                cache[key] = M.build_planar(fields(p, n))
            elif construction == "alltop":
                p, n = args
                cache[key] = M.build_alltop(fields(p, n))
            elif construction == "symplectic":
                p, n, s = args
                cache[key] = M.build_symplectic(fields(p, n), s)
            elif construction == "galois-ring":
                (n,) = args
                cache[key] = M.build_galois_ring(rings(n))
            else:
                raise ValueError(construction)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def audits(families):
    """Cached audit reports, shared across structure/geometry tests."""
    cache = {}

    def get(construction, *args):
        key = (construction,) + args
        if key not in cache:
            cache[key] = M.audit_family(families(construction, *args))
        return cache[key]

    return get
