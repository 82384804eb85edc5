"""Compare the compiled and pure-Python evaluation kernels.

    python3 benchmarks/bench_kernel.py [--nodes N] [--repeat R]
"""
import argparse
import random
from importlib import resources
from time import perf_counter

from sigforge import load_file
from sigforge.term_algebra import (AlgebraSpec, DispAlgebraSpec, TermValue, flatten,
                                   implementations)
from sigforge.term_algebra.evaluate import _run, recursor_values


def numeral(n: int) -> TermValue:
    t = TermValue(0)
    for _ in range(n):
        t = TermValue(1, (t,))
    return t


def random_tree(rng: random.Random, nodes: int) -> TermValue:
    # grow bottom-up so the term is a tree, not a chain
    pool = [TermValue(0) for _ in range(nodes // 2 + 1)]
    while len(pool) > 1:
        i, j = rng.randrange(len(pool)), rng.randrange(len(pool))
        if i == j:
            continue
        a, b = pool[i], pool[j]
        for k in sorted((i, j), reverse=True):
            pool[k] = pool[-1]
            pool.pop()
        pool.append(TermValue(1, (a, b)))
    return pool[0]


def bench(label, flat, fn, repeat):
    rows = []
    for impl in implementations():
        best = min(_time(lambda: fn(flat, impl)) for _ in range(repeat))
        rows.append((impl.IMPLEMENTATION, best))
    base = rows[-1][1]
    for name, t in rows:
        print(f"{label:<28} {name:<8} {t * 1e3:9.2f} ms  {len(flat) / t / 1e6:7.2f} Mnodes/s"
              f"  x{base / t:5.1f}")


def _time(f) -> float:
    t0 = perf_counter()
    f()
    return perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--nodes", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    corpus = resources.files("sigforge") / "corpus"
    nat = load_file(str(corpus / "nat.sig"))
    tree = load_file(str(corpus / "tree.sig"))

    nat_alg = AlgebraSpec.from_json(nat, {"ops": {"zero": "0", "suc": "x0 + 1"}})
    tri = DispAlgebraSpec.from_json(nat, {"algebra": {"zero": "0", "suc": "x0 + 1"},
                                          "methods": {"zero": "0", "suc": "ih0 + x0 + 1"}})
    tree_alg = AlgebraSpec.from_json(tree, {"ops": {"leaf": "1", "node": "max(x0, x1) + 1"}})

    chain = flatten(numeral(args.nodes))
    bushy = flatten(random_tree(random.Random(args.seed), args.nodes))

    bench("nat recursor", chain, lambda f, k: recursor_values(nat, nat_alg, f, k), args.repeat)
    bench("nat eliminator", chain,
          lambda f, k: _run(f, tri.methods, recursor_values(nat, tri.companion, f, k), None, k),
          args.repeat)
    bench("tree recursor", bushy, lambda f, k: recursor_values(tree, tree_alg, f, k), args.repeat)


if __name__ == "__main__":
    main()
