from typing import Iterable

from scipy.cluster.hierarchy import DisjointSet


def transitive_closure(pairs: Iterable[tuple[str, str]], universe: Iterable[str]) -> list[frozenset[str]]:
    """Connected components of (universe, pairs), ordered by smallest member."""
    disjoint_set = DisjointSet(sorted(universe))
    for a, b in pairs:
        if a not in disjoint_set or b not in disjoint_set:
            raise ValueError(f"Pair ({a!r}, {b!r}) has an endpoint outside the universe")
        disjoint_set.merge(a, b)
    return sorted((frozenset(subset) for subset in disjoint_set.subsets()), key=min)
