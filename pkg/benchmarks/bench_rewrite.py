"""Compare the compiled rewrite kernel against the pure-Python fallback.

Both backends implement the same RuleTable contract, so this script builds
identical rule tables from a few completed presentations, reduces the same
batch of composable words with each, checks the outputs agree, and reports
wall-clock times.

Run from the repository root:

    python3 benchmarks/bench_rewrite.py [--words N] [--length L] [--seed S]
"""

import argparse
import random
import time

from catcw import build, chaotic, Path, sphere
from catcw._rewrite_c import RuleTable as CRuleTable
from catcw._rewrite_py import RuleTable as PyRuleTable


def int_rules(cat, budget=2000):
    """The completed rule table of a presentation, as generator-index words."""
    rs = cat.completion(budget)
    if not rs.complete:
        raise RuntimeError(f"completion budget too small for {cat.objects}")
    idx = cat.quiver.gen_index
    return [
        (tuple(idx[n] for n in l.gens), tuple(idx[n] for n in r.gens))
        for l, r in rs.rules
    ]


def random_walks(cat, rng, count, length):
    """Composable generator-index words sampled by random walks on the quiver."""
    by_src = {}
    for g in cat.quiver.generators:
        by_src.setdefault(g.src, []).append(g)
    idx = cat.quiver.gen_index
    words = []
    for _ in range(count):
        at = rng.choice(cat.objects)
        word = []
        for _ in range(length):
            outgoing = by_src.get(at)
            if not outgoing:
                break
            g = rng.choice(outgoing)
            word.append(idx[g.name])
            at = g.dst
        words.append(tuple(word))
    return words


def cases():
    order2 = build(
        ["x"], [("t", "x", "x")], [(Path("x", ("t", "t")), Path("x"))], ["t"]
    )
    return [
        ("order-2 loop", order2),
        ("free invertible loop", sphere(1)),
        ("chaotic, 3 objects", chaotic(["p", "q", "r"])),
    ]


def bench(table, words, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for w in words:
            table.reduce(w)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--words", type=int, default=200, help="words per case")
    ap.add_argument("--length", type=int, default=400, help="walk length")
    ap.add_argument("--repeat", type=int, default=5, help="timing repetitions")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print(f"{'case':<22}{'rules':>6}{'python':>12}{'compiled':>12}{'speedup':>9}")
    for name, cat in cases():
        rules = int_rules(cat)
        words = random_walks(cat, rng, args.words, args.length)
        py_table = PyRuleTable(rules)
        c_table = CRuleTable(rules)
        for w in words:
            if py_table.reduce(w) != c_table.reduce(w):
                raise SystemExit(f"backend mismatch on {name}: {w}")
        t_py = bench(py_table, words, args.repeat)
        t_c = bench(c_table, words, args.repeat)
        print(
            f"{name:<22}{len(rules):>6}{t_py:>11.4f}s{t_c:>11.4f}s"
            f"{t_py / t_c:>8.1f}x"
        )


if __name__ == "__main__":
    main()
