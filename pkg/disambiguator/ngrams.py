import math
from collections import Counter
from typing import Iterable, Mapping

DEFAULT_N_SET = (2, 3, 4)


def ngram_profile(text: str, n_set: Iterable[int] = DEFAULT_N_SET) -> Counter[str]:
    """Term frequencies of contiguous character n-grams, taken within each whitespace token."""
    n_set = tuple(n_set)
    profile: Counter[str] = Counter()
    for token in text.split():
        for n in n_set:
            profile.update(token[start:start + n] for start in range(len(token) - n + 1))
    return profile


def cosine(p: Mapping[str, int], q: Mapping[str, int]) -> float:
    if not p or not q:
        return 0.0
    if len(p) > len(q):
        p, q = q, p
    dot = sum(count * q.get(gram, 0) for gram, count in p.items())
    if dot == 0:
        return 0.0
    norm = math.sqrt(sum(c * c for c in p.values()) * sum(c * c for c in q.values()))
    # Rounding can push identical profiles a hair past 1.
    return min(1.0, dot / norm)
