import random

import pytest

from dynstr.grammar import Grammar
from dynstr.shrink import shrink_layers

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, name, detail = ACCEPTANCE[num]
        terminalreporter.write_line("%s %2d %s: %s" % ("PASS" if ok else "FAIL", num, name, detail))


def random_text(rnd, n, alphabet="ab"):
    return "".join(rnd.choice(alphabet) for _ in range(n))


def tree_nodes(g, text):
    """Set of (level, start, end, sig) over the uncompressed parse tree of text."""
    layers = shrink_layers(g, text)
    return {(lv, i, j, s) for lv, layer in enumerate(layers) for s, i, j in layer}, layers


@pytest.fixture
def rnd():
    return random.Random(12345)


@pytest.fixture
def grammar():
    return Grammar(seed=7)
