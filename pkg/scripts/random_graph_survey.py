#!/usr/bin/env python3
"""Survey leadership and competition structure on random directed graphs.

Generates seeded random graphs, then reports how leadership-group size
and the fraction of effectively competing pairs vary with edge density.

Example:
    python scripts/random_graph_survey.py --nodes 12 --graphs 40 --seed 7
"""

import argparse

import numpy as np

from rankreach import DirectedGraph, RankContext, competitivity_graph, leadership_group


def random_graph(rng, n, density, dangling_frac):
    labels = tuple(str(i + 1) for i in range(n))
    mask = rng.random((n, n)) < density
    k = int(round(dangling_frac * n))
    if k:
        mask[rng.permutation(n)[:k], :] = False
    edges = frozenset((int(s), int(t)) for s, t in np.argwhere(mask))
    return DirectedGraph(labels=labels, edges=edges)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=12)
    ap.add_argument("--graphs", type=int, default=40)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--alpha", type=float, default=0.85)
    ap.add_argument("--dangling-frac", type=float, default=0.2)
    args = ap.parse_args()

    rng = np.random.Generator(np.random.Philox(key=args.seed))
    n_pairs = args.nodes * (args.nodes - 1) // 2
    print(f"n={args.nodes}, {args.graphs} graphs per density, "
          f"alpha={args.alpha}, dangling fraction {args.dangling_frac}")
    print(f"{'density':>8}  {'leaders(mean)':>14}  {'competing pairs':>16}")
    for density in (0.1, 0.2, 0.3, 0.5, 0.8):
        leaders, competing = [], []
        for _ in range(args.graphs):
            g = random_graph(rng, args.nodes, density, args.dangling_frac)
            ctx = RankContext.from_graph(g, alpha=args.alpha)
            x = ctx.fundamental()
            leaders.append(len(leadership_group(x).leaders))
            competing.append(len(competitivity_graph(x)) / n_pairs)
        print(f"{density:>8.2f}  {np.mean(leaders):>14.2f}  "
              f"{np.mean(competing):>15.1%}")


if __name__ == "__main__":
    main()
