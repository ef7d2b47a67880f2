"""Shared fixtures: the running example dataset and its windowed form."""
import io

import pytest

from intervalmine.io import parse_dataset
from intervalmine.model import UtilityTable
from intervalmine.transform import transform_dataset

# The 4-sequence example used throughout the tests, in the dataset file
# format (id, label, begin, finish).
EXAMPLE_DATA = """\
1\tA\t6\t12
1\tB\t10\t17
1\tC\t19\t25
1\tE\t21\t23
2\tA\t2\t7
2\tB\t5\t10
2\tD\t5\t12
2\tC\t16\t22
2\tE\t18\t20
3\tB\t6\t12
3\tA\t8\t14
3\tC\t14\t20
3\tE\t16\t18
4\tB\t1\t5
4\tC\t8\t14
4\tE\t9\t12
4\tF\t9\t12
"""

EXAMPLE_UTILITIES = {"A": 2.0, "B": 1.0, "C": 1.0, "D": 3.0, "E": 2.0, "F": 5.0}


@pytest.fixture(scope="session")
def example_dataset():
    return parse_dataset(io.StringIO(EXAMPLE_DATA))


@pytest.fixture(scope="session")
def example_table():
    return UtilityTable(EXAMPLE_UTILITIES)


@pytest.fixture(scope="session")
def example_cdata(example_dataset, example_table):
    return transform_dataset(example_dataset, example_table)


@pytest.fixture(scope="session")
def cs(example_cdata):
    """C-sequences of the example keyed by sequence id."""
    return {c.id: c for c in example_cdata.csequences}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one line per acceptance criterion after the run."""
    import _acceptance_log

    lines = _acceptance_log.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
