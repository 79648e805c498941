import sys

import pytest

from chargesched.generators import KnapsackInput, gen_knapsack


@pytest.fixture
def knapsack_gadget():
    return gen_knapsack(KnapsackInput(5, [(6, 4), (5, 3), (4, 2)]))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for key in sorted(lines):
            terminalreporter.write_line(lines[key])
