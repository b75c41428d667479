"""Shared generators for randomized tests."""

import numpy as np

from rankreach import DirectedGraph, RankContext, RowStochasticMatrix


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed))


def random_graph(rng, n, density=0.2, dangling_frac=0.0) -> DirectedGraph:
    """Random directed graph; a chosen fraction of nodes is forced dangling."""
    labels = tuple(str(i + 1) for i in range(n))
    mask = rng.random((n, n)) < density
    k = int(round(dangling_frac * n))
    if k:
        mask[rng.permutation(n)[:k], :] = False
    edges = frozenset((int(s), int(t)) for s, t in np.argwhere(mask))
    return DirectedGraph(labels=labels, edges=edges)


def random_context(rng, n, density=0.2, dangling_frac=0.3, alpha=0.85) -> RankContext:
    return RankContext.from_graph(
        random_graph(rng, n, density, dangling_frac), alpha=alpha
    )


def random_row_stochastic(rng, n) -> RowStochasticMatrix:
    w = -np.log(rng.random((n, n)))
    return RowStochasticMatrix(p=w / w.sum(axis=1, keepdims=True),
                               dangling_patched=True)
