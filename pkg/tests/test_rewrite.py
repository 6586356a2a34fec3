"""Kernel-level rewriting tests: fixed vectors plus backend cross-checks."""

import os
import random
import subprocess
import sys

import pytest

from catcw import kernel
from catcw._rewrite_py import RuleTable as PyRuleTable


def test_fixed_vectors_free_group():
    # a a^-1 -> empty, a^-1 a -> empty over the alphabet {0: a, 1: a^-1}
    rt = PyRuleTable([((0, 1), ()), ((1, 0), ())])
    assert rt.reduce((0, 1)) == ()
    assert rt.reduce((0, 0, 1, 1)) == ()
    assert rt.reduce((1, 0, 0)) == (0,)
    assert rt.reduce((0, 0, 0)) == (0, 0, 0)
    assert rt.reduce(()) == ()


def test_fixed_vectors_order_matters():
    # two overlapping rules: the first in table order wins at each site
    rt = PyRuleTable([((0, 0), (1,)), ((0, 1), ())])
    assert rt.reduce((0, 0, 1)) == (1, 1)
    assert rt.reduce((0, 0, 0)) == (1, 0)


def test_fixed_vectors_leftmost_scan():
    rt = PyRuleTable([((1, 1), ())])
    assert rt.reduce((1, 1, 1)) == (1,)
    assert rt.reduce((0, 1, 1, 1, 1, 2)) == (0, 2)


def test_rejects_growing_rule():
    with pytest.raises(ValueError):
        PyRuleTable([((0,), (0, 0))])
    with pytest.raises(ValueError):
        PyRuleTable([((), (0,))])


def test_compiled_backend_matches_pure():
    if kernel.KERNEL_BACKEND != "c":
        pytest.skip("compiled kernel not built")
    from catcw._rewrite_c import RuleTable as CRuleTable

    rng = random.Random(20260814)
    for trial in range(200):
        alphabet = rng.randint(1, 5)
        rules = []
        for _ in range(rng.randint(0, 4)):
            # shortlex-decreasing, as the completion layer guarantees:
            # anything else need not terminate
            llen = rng.randint(1, 3)
            lhs = tuple(rng.randrange(alphabet) for _ in range(llen))
            while True:
                rlen = rng.randint(0, llen)
                rhs = tuple(rng.randrange(alphabet) for _ in range(rlen))
                if (rlen, rhs) < (llen, lhs):
                    break
            rules.append((lhs, rhs))
        py = PyRuleTable(rules)
        cc = CRuleTable(rules)
        for _ in range(10):
            word = tuple(rng.randrange(alphabet) for _ in range(rng.randint(0, 12)))
            assert py.reduce(word) == cc.reduce(word), (rules, word)


def test_pure_python_env_override():
    code = (
        "from catcw import kernel; print(kernel.KERNEL_BACKEND)"
    )
    env = dict(os.environ, CATCW_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env
    )
    assert out.returncode == 0
    assert out.stdout.strip() == "python"


def test_rules_attribute_round_trip():
    rules = [((0, 1), ()), ((2, 2), (2,))]
    rt = kernel.RuleTable(rules)
    assert tuple(rt.rules) == tuple((tuple(l), tuple(r)) for l, r in rules)
