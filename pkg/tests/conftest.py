import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from lsconformal import LscAlgebra  # noqa: E402

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CORPUS = os.path.join(ROOT, "corpus")


def make_a_c(poly="D + L + c", check=True):
    return LscAlgebra.from_dict(["a"], {("a", "a"): {"a": poly}}, check=check)


@pytest.fixture
def a_c():
    return make_a_c()


def corpus(name):
    return os.path.join(CORPUS, name)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
