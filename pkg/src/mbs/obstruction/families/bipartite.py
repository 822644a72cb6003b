"""Bipartite graphs built from one circular permutation per index, as used for the bouquet argument on ``X_2``.

For every ``m`` in ``1..n`` a circular permutation ``b_1, ..., b_{n-1}`` of ``{1..n} \\ {m}`` contributes the
edges ``{v_{b_1}^+, v_{b_2}^-}, ..., {v_{b_{n-1}}^+, v_{b_1}^-}``. Nodes are pairs ``(i, "+")`` and ``(i, "-")``.
"""

from __future__ import annotations

import itertools
from typing import TYPE_CHECKING

import networkx as nx

if TYPE_CHECKING:  # pragma: no cover
    from collections.abc import Iterator, Sequence

    import numpy as np


def _validate(perms: Sequence[Sequence[int]]) -> int:
    n = len(perms)
    if n < 2:
        msg = "At least two permutations are required."
        raise ValueError(msg)
    for m, perm in enumerate(perms, start=1):
        if sorted(perm) != [i for i in range(1, n + 1) if i != m]:
            msg = f"Permutation {list(perm)} for m={m} is not an ordering of {{1..{n}}} without {m}."
            raise ValueError(msg)
    return n


def bipartite_graph(perms: Sequence[Sequence[int]]) -> nx.Graph:
    """Build the graph on ``v_1^+, ..., v_n^+, v_1^-, ..., v_n^-`` from the given permutations.

    Arguments:
        perms: ``perms[m - 1]`` is the circular permutation chosen for ``m``

    Raises:
        ValueError: if a permutation is malformed
    """
    n = _validate(perms)
    graph = nx.Graph()
    graph.add_nodes_from((i, sign) for sign in "+-" for i in range(1, n + 1))
    for perm in perms:
        graph.add_edges_from(((b, "+"), (perm[(j + 1) % len(perm)], "-")) for j, b in enumerate(perm))
    return graph


def is_connected(graph: nx.Graph) -> bool:
    """Standard connectivity; the graph without nodes counts as disconnected."""
    if graph.number_of_nodes() == 0:
        return False
    return bool(nx.is_connected(graph))


def _circular_permutations(items: list[int]) -> list[tuple[int, ...]]:
    first, *rest = items
    return [(first, *perm) for perm in itertools.permutations(rest)]


def lemma_choices(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Yield every choice of circular permutations up to rotation, ``((n - 2)!)^n`` in total."""
    if n < 2:
        msg = "n must be at least 2."
        raise ValueError(msg)
    per_index = [_circular_permutations([i for i in range(1, n + 1) if i != m]) for m in range(1, n + 1)]
    yield from itertools.product(*per_index)


def random_choice(n: int, rng: np.random.Generator) -> tuple[tuple[int, ...], ...]:
    """Draw one choice of circular permutations uniformly, each starting with its least element."""
    if n < 2:
        msg = "n must be at least 2."
        raise ValueError(msg)
    choice = []
    for m in range(1, n + 1):
        first, *rest = (i for i in range(1, n + 1) if i != m)
        choice.append((first, *(int(i) for i in rng.permutation(rest))))
    return tuple(choice)
