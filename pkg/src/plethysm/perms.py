"""Small permutation helpers used by the tabloid and homomorphism modules.

Permutations of {1..n} are dicts mapping each point to its image; points
not in the dict are fixed.
"""

import random
from itertools import permutations


def parity(perm: tuple[int, ...]) -> int:
    """Sign of a permutation given as a tuple of images of (0..k-1)."""
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def signed_arrangements(items: tuple[int, ...]):
    """Yield (arrangement, sign) over all |items|! orderings of distinct items."""
    idx = range(len(items))
    for p in permutations(idx):
        yield tuple(items[i] for i in p), parity(p)


def distinct_permutations(items: tuple[int, ...]):
    """Yield the distinct rearrangements of a multiset, in sorted order."""
    pool = sorted(items)
    n = len(pool)
    out: list[int] = []

    def rec():
        if len(out) == n:
            yield tuple(out)
            return
        prev = None
        for i, x in enumerate(pool):
            if x is None or x == prev:
                continue
            prev = x
            pool[i] = None
            out.append(x)
            yield from rec()
            out.pop()
            pool[i] = x

    yield from rec()


def random_permutation(n: int, rng: random.Random) -> dict[int, int]:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return {i + 1: images[i] for i in range(n)}


def compose(sigma: dict[int, int], rho: dict[int, int]) -> dict[int, int]:
    """sigma after rho on the union of their supports."""
    points = set(sigma) | set(rho)
    return {x: sigma.get(rho.get(x, x), rho.get(x, x)) for x in points}
