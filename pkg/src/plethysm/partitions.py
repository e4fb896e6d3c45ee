"""Integer partition arithmetic and combinatorial counts.

Partitions are plain tuples of weakly decreasing positive integers,
stored without trailing zeros; the empty tuple is the empty partition.
All counts are exact Python integers.
"""

from functools import cache
from math import factorial

from .errors import ResourceCapError, UsageError

Partition = tuple[int, ...]

ENUMERATION_CAP = 40


def check_partition(p) -> Partition:
    """Validate and normalize p as a partition tuple."""
    t = tuple(p)
    for i, part in enumerate(t):
        if not isinstance(part, int) or part < 1:
            raise UsageError(f"partition parts must be positive integers: {t}")
        if i > 0 and t[i - 1] < part:
            raise UsageError(f"partition parts must be weakly decreasing: {t}")
    return t


def conjugate(p: Partition) -> Partition:
    """Transpose of the Ferrers diagram."""
    if not p:
        return ()
    return tuple(sum(1 for part in p if part > i) for i in range(p[0]))


def union_parts(a: Partition, b: Partition) -> Partition:
    """Multiset union of parts, sorted weakly decreasing."""
    return tuple(sorted(a + b, reverse=True))


def add_parts(a: Partition, b: Partition) -> Partition:
    """Componentwise sum, missing parts treated as 0."""
    n = max(len(a), len(b))
    pa = a + (0,) * (n - len(a))
    pb = b + (0,) * (n - len(b))
    out = tuple(x + y for x, y in zip(pa, pb))
    # cannot fail for two partitions aligned at row 1; internal sanity check
    assert all(out[i] >= out[i + 1] for i in range(len(out) - 1)), out
    return tuple(x for x in out if x)


def repeat(p: Partition, n: int) -> Partition:
    """n-fold union of p with itself."""
    if n < 1:
        raise UsageError(f"repeat count must be >= 1, got {n}")
    return tuple(sorted(p * n, reverse=True))


@cache
def _partitions_of(n: int, largest: int) -> tuple[Partition, ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_of(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(n: int, max_n: int = ENUMERATION_CAP) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order, (n) first."""
    if n < 0:
        raise UsageError(f"cannot enumerate partitions of {n}")
    if n > max_n:
        raise ResourceCapError(f"partition enumeration of {n} exceeds cap {max_n}")
    return list(_partitions_of(n, n))


def partitions_up_to(n: int, include_empty: bool = False) -> list[Partition]:
    """All partitions of sizes 1..n (0..n with include_empty), small sizes first."""
    lo = 0 if include_empty else 1
    out = []
    for k in range(lo, n + 1):
        out.extend(enumerate_partitions(k))
    return out


def hook_lengths(p: Partition) -> list[list[int]]:
    conj = conjugate(p)
    return [[p[r] - c + conj[c] - r - 1 for c in range(p[r])] for r in range(len(p))]


def num_standard_tableaux(p: Partition) -> int:
    """f^lambda by the hook length formula."""
    n = sum(p)
    d = factorial(n)
    for row in hook_lengths(p):
        for h in row:
            assert d % h == 0
            d //= h
    return d


def z_of(p: Partition) -> int:
    """Centralizer order of the conjugacy class with cycle type p."""
    z = 1
    mult: dict[int, int] = {}
    for part in p:
        mult[part] = mult.get(part, 0) + 1
    for value, m in mult.items():
        z *= value**m * factorial(m)
    return z


def is_column(p: Partition) -> bool:
    """True for (1^k), k >= 1; these degenerate the order relation."""
    return len(p) >= 1 and p[0] == 1


def format_partition(p: Partition) -> str:
    return ",".join(str(x) for x in p)


def parse_partition(text: str) -> Partition:
    """Parse '3,2,1' (or '--' / '' for the empty partition)."""
    text = text.strip()
    if text in ("--", ""):
        return ()
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"cannot parse partition from {text!r}") from exc
    return check_partition(parts)
