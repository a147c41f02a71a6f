"""Shared fixtures: one group instance per (order, backend), reused across tests.

Group construction involves a curve search for the EC backend, so instances
are session-scoped. Derived curve parameters are frozen here after being found
once by groups.find_ec_group_params; a guard test in test_groups.py re-derives
them so drift in the search would be caught.
"""

import pytest

from dhpbound.groups import load_toy_curve, make_ec_group, make_mult_subgroup, make_zp_additive

# q, A, B, Gx, Gy frozen from find_ec_group_params(p) for the sweep orders
TOY_CURVES = {
    29: (23, 1, 4, 0, 2),
    101: (83, 2, 28, 0, 32),
    1009: (953, 5, 19, 1, 5),
}

# q and h for order-p multiplicative subgroups of F_q^x (q = 2kp + 1 prime)
MULT_PARAMS = {
    29: (59, 2),
    101: (607, 2),
    1009: (10091, 2),
    16381: (163811, 2),
}


def make_backend(kind: str, p: int):
    """Fresh group of prime order p on the requested backend."""
    if kind == "zp":
        return make_zp_additive(p)
    if kind == "mult":
        q, h = MULT_PARAMS[p]
        return make_mult_subgroup(q, p, h)
    if kind == "ec":
        if p == 16381:
            return load_toy_curve()
        q, a, b, gx, gy = TOY_CURVES[p]
        return make_ec_group(q, a, b, gx, gy, p)
    raise ValueError(kind)


@pytest.fixture(scope="session")
def groups_101():
    return {kind: make_backend(kind, 101) for kind in ("zp", "mult", "ec")}


@pytest.fixture(scope="session")
def toy_ec_16381():
    return load_toy_curve()


# one line per acceptance criterion, shown after the test summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
