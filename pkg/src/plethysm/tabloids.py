"""Permutation modules on (plethystic) tabloids and their equivariant maps.

A tabloid is stored as a tuple of rows, each row an ascending tuple of
entries; rows are positions, so only entries inside a row are unordered.  A
plethystic tabloid is a tuple of outer rows, each holding inner tabloids of
one common shape, sorted by minimal entry (outer rows never mix).
"""

from fractions import Fraction
from itertools import combinations, permutations
from math import factorial
from typing import NamedTuple

from .errors import ResourceCapError, UsageError
from .partitions import Partition, check_partition, union_parts

BASIS_CAP = 12


class Tabloid(NamedTuple):
    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    def entries(self) -> frozenset:
        return frozenset(x for row in self.rows for x in row)

    def min_entry(self) -> int:
        return min(row[0] for row in self.rows)


def tabloid(rows) -> Tabloid:
    """Canonical tabloid: each row sorted ascending; rows must be disjoint."""
    canon = tuple(tuple(sorted(row)) for row in rows)
    shape = tuple(len(r) for r in canon)
    check_partition(shape)
    seen: set[int] = set()
    for row in canon:
        for x in row:
            if x in seen:
                raise UsageError(f"repeated entry {x} in tabloid rows {rows}")
            seen.add(x)
    return Tabloid(canon)


class PlethysticTabloid(NamedTuple):
    outer_rows: tuple[tuple[Tabloid, ...], ...]

    @property
    def outer_shape(self) -> Partition:
        return tuple(len(r) for r in self.outer_rows)

    @property
    def inner_shape(self) -> Partition:
        for row in self.outer_rows:
            for tab in row:
                return tab.shape
        return ()

    def inner_tabloids(self) -> tuple[Tabloid, ...]:
        return tuple(tab for row in self.outer_rows for tab in row)

    def entries(self) -> frozenset:
        return frozenset(x for tab in self.inner_tabloids() for x in tab.entries())


def canonicalize(raw_rows, expected=None) -> PlethysticTabloid:
    """Canonical orbit representative of a raw plethystic tableau.

    raw_rows: outer rows, each a sequence of inner tableaux (sequences of
    rows).  Inner rows are sorted, inner tabloids within an outer row are
    ordered by minimal entry.  With expected=None the entries must be
    exactly {1..nm}.
    """
    rows = []
    inner_shape = None
    for raw_row in raw_rows:
        tabs = []
        for raw_tab in raw_row:
            tab = raw_tab if isinstance(raw_tab, Tabloid) else tabloid(raw_tab)
            if inner_shape is None:
                inner_shape = tab.shape
            elif tab.shape != inner_shape:
                raise UsageError(
                    f"inner shapes differ: {tab.shape} vs {inner_shape}"
                )
            tabs.append(tab)
        rows.append(tuple(sorted(tabs, key=Tabloid.min_entry)))
    pt = PlethysticTabloid(tuple(rows))
    check_partition(pt.outer_shape)
    entries = sorted(x for tab in pt.inner_tabloids() for x in tab.entries())
    if len(entries) != len(set(entries)):
        raise UsageError("entries of a plethystic tableau must be distinct")
    target = sorted(expected) if expected is not None else list(range(1, len(entries) + 1))
    if entries != target:
        raise UsageError(f"entries {entries} do not cover {target}")
    return pt


# ---------------------------------------------------------------------------
# basis enumeration


def basis_dimension(nu: Partition, mu: Partition) -> int:
    """(nm)! / ((prod mu_i!)^n * prod nu_j!)."""
    n, m = sum(nu), sum(mu)
    denom = 1
    for part in mu:
        denom *= factorial(part)
    denom = denom**n
    for part in nu:
        denom *= factorial(part)
    total = factorial(n * m)
    assert total % denom == 0
    return total // denom


def _without(pool: tuple[int, ...], taken) -> tuple[int, ...]:
    taken = set(taken)
    return tuple(x for x in pool if x not in taken)


def _iter_fillings(support: tuple[int, ...], mu: Partition):
    """All tabloids of shape mu on the given support (rows are positions)."""
    if not mu:
        yield Tabloid(())
        return
    if len(mu) == 1:
        yield Tabloid((support,))
        return
    if mu[0] == 1:
        for perm in permutations(support):
            yield Tabloid(tuple((x,) for x in perm))
        return
    for first in combinations(support, mu[0]):
        rest = _without(support, first)
        for tail in _iter_fillings(rest, mu[1:]):
            yield Tabloid((first,) + tail.rows)


def _iter_block_partitions(support: tuple[int, ...], k: int, m: int):
    """Unordered partitions of support into k blocks of size m, min-led."""
    if k == 0:
        yield ()
        return
    head, rest = support[0], support[1:]
    for others in combinations(rest, m - 1):
        block = (head,) + others
        remaining = _without(rest, others)
        for more in _iter_block_partitions(remaining, k - 1, m):
            yield (block,) + more


def iter_basis(nu: Partition, mu: Partition, cap: int = BASIS_CAP):
    """Yield every canonical plethystic tabloid of shape nu[mu] once."""
    nu, mu = check_partition(nu), check_partition(mu)
    if not mu and nu:
        raise UsageError("inner shape must be nonempty")
    n, m = sum(nu), sum(mu)
    if n * m > cap:
        raise ResourceCapError(f"basis of {nu}[{mu}] has degree {n * m} > cap {cap}")

    from itertools import product

    def iter_rows(blocks):
        # a row with several blocks has small blocks (k*m <= nm), so their
        # filling lists are safe to materialize; single blocks stream
        if len(blocks) == 1:
            for filling in _iter_fillings(blocks[0], mu):
                yield (filling,)
            return
        yield from product(*[list(_iter_fillings(b, mu)) for b in blocks])

    def rec(row_idx: int, remaining: tuple[int, ...], built):
        if row_idx == len(nu):
            yield PlethysticTabloid(built)
            return
        k = nu[row_idx]
        for support in combinations(remaining, k * m):
            rest = _without(remaining, support)
            for blocks in _iter_block_partitions(support, k, m):
                for row in iter_rows(blocks):
                    yield from rec(row_idx + 1, rest, built + (row,))

    yield from rec(0, tuple(range(1, n * m + 1)), ())


def enumerate_basis(nu: Partition, mu: Partition, cap: int = BASIS_CAP) -> list:
    """Sorted list of the canonical basis of M^{nu[mu]}."""
    return sorted(iter_basis(nu, mu, cap))


def count_basis(nu: Partition, mu: Partition, cap: int = BASIS_CAP) -> int:
    """Count the canonical basis by walking the full enumeration tree.

    Same walk as iter_basis, but plain recursion (no generator frames and
    no tabloid assembly), so the direct-enumeration check stays affordable
    at the cap.
    """
    nu, mu = check_partition(nu), check_partition(mu)
    if not mu and nu:
        raise UsageError("inner shape must be nonempty")
    n, m = sum(nu), sum(mu)
    if n * m > cap:
        raise ResourceCapError(f"basis of {nu}[{mu}] has degree {n * m} > cap {cap}")
    total = 0

    def count_fillings(support) -> int:
        if len(mu) == 1:
            return 1
        if mu[0] == 1:
            return sum(1 for _ in permutations(support))
        return sum(1 for _ in _iter_fillings(support, mu))

    def rec(row_idx: int, remaining: tuple[int, ...]):
        nonlocal total
        if row_idx == len(nu):
            total += 1
            return
        k = nu[row_idx]
        for support in combinations(remaining, k * m):
            rest = _without(remaining, support)
            for blocks in _iter_block_partitions(support, k, m):
                per_block = [count_fillings(b) for b in blocks]
                ways = 1
                for w in per_block:
                    ways *= w
                if row_idx + 1 == len(nu):
                    total += ways
                else:
                    for _ in range(ways):
                        rec(row_idx + 1, rest)

    rec(0, tuple(range(1, n * m + 1)))
    return total


# ---------------------------------------------------------------------------
# module vectors


class ModuleVector:
    """Formal exact-rational combination of basis elements of one space."""

    __slots__ = ("space", "terms")

    def __init__(self, space, terms: dict):
        self.space = space
        self.terms = {}
        for key, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff:
                self.terms[key] = coeff

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        if self.space != other.space:
            raise UsageError(f"mixed spaces: {self.space} vs {other.space}")
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + coeff
        return ModuleVector(self.space, out)

    def scale(self, c) -> "ModuleVector":
        c = Fraction(c)
        return ModuleVector(self.space, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModuleVector)
            and self.space == other.space
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    def __repr__(self):
        return f"ModuleVector({self.space}, {len(self.terms)} terms)"


def pleth_space(nu: Partition, mu: Partition):
    return ("pleth", tuple(nu), tuple(mu))


def tensor_space(mu: Partition, n: int):
    return ("tensor", tuple(mu), n)


def tabloid_space(shape: Partition):
    return ("M", tuple(shape))


# ---------------------------------------------------------------------------
# symmetric group action


def relabel_tabloid(tab: Tabloid, mapping: dict) -> Tabloid:
    return tabloid([[mapping.get(x, x) for x in row] for row in tab.rows])


def relabel_pt(pt: PlethysticTabloid, mapping: dict, expected=None) -> PlethysticTabloid:
    raw = [
        [[[mapping.get(x, x) for x in row] for row in tab.rows] for tab in outer_row]
        for outer_row in pt.outer_rows
    ]
    if expected is None:
        expected = {mapping.get(x, x) for x in pt.entries()}
    return canonicalize(raw, expected=expected)


def act(sigma: dict, v: ModuleVector) -> ModuleVector:
    """Relabel every basis term by the permutation sigma and re-canonicalize."""
    kind = v.space[0]
    out: dict = {}
    for key, coeff in v.terms.items():
        if kind == "pleth":
            new = relabel_pt(key, sigma)
        elif kind == "M":
            new = relabel_tabloid(key, sigma)
        elif kind == "tensor":
            new = tuple(relabel_tabloid(tab, sigma) for tab in key)
        else:
            raise UsageError(f"unknown space {v.space}")
        out[new] = out.get(new, Fraction(0)) + coeff
    return ModuleVector(v.space, out)


# ---------------------------------------------------------------------------
# the projection phi, its section phi~, and the transpose map Psi


def phi_tuple(tabs: tuple, nu: Partition) -> PlethysticTabloid:
    """Place the n inner tabloids into the outer shape nu, row by row."""
    nu = check_partition(nu)
    if len(tabs) != sum(nu):
        raise UsageError(f"{len(tabs)} factors cannot fill outer shape {nu}")
    rows = []
    pos = 0
    for part in nu:
        rows.append(tuple(sorted(tabs[pos : pos + part], key=Tabloid.min_entry)))
        pos += part
    return PlethysticTabloid(tuple(rows))


def phi(v: ModuleVector, nu: Partition) -> ModuleVector:
    """Projection from the tensor basis of M^{mu^n} onto M^{nu[mu]}."""
    mu = v.space[1]
    out: dict = {}
    for tabs, coeff in v.terms.items():
        key = phi_tuple(tabs, nu)
        out[key] = out.get(key, Fraction(0)) + coeff
    return ModuleVector(pleth_space(nu, mu), out)


def phi_tilde_tabloid(pt: PlethysticTabloid) -> ModuleVector:
    """Section of phi: average of the outer-row rearrangements of {T}."""
    nu = pt.outer_shape
    mu = pt.inner_shape
    arrangements_per_row = [list(permutations(row)) for row in pt.outer_rows]
    weight = Fraction(1)
    for row in pt.outer_rows:
        weight /= factorial(len(row))
    out: dict = {}

    def rec(i: int, prefix: tuple):
        if i == len(arrangements_per_row):
            out[prefix] = out.get(prefix, Fraction(0)) + weight
            return
        for arr in arrangements_per_row[i]:
            rec(i + 1, prefix + arr)

    rec(0, ())
    return ModuleVector(tensor_space(mu, sum(nu)), out)


def phi_tilde(v: ModuleVector) -> ModuleVector:
    nu, mu = v.space[1], v.space[2]
    result = ModuleVector(tensor_space(mu, sum(nu)), {})
    for pt, coeff in v.terms.items():
        result = result + phi_tilde_tabloid(pt).scale(coeff)
    return result


def _row_arrangements(tab: Tabloid) -> list[tuple[int, ...]]:
    """All orderings of the entry list of tab obtained by permuting rows."""
    per_row = [list(permutations(row)) for row in tab.rows]
    out: list[tuple[int, ...]] = [()]
    for options in per_row:
        out = [prefix + opt for prefix in out for opt in options]
    return out


def psi_tuple(tabs: tuple, nu: Partition) -> ModuleVector:
    """Column-transpose map M^{mu^n} -> M^{nu^m} on one tensor basis element.

    Entry j of each factor (in cell order) is collected into the j-th
    target tabloid of shape nu; the sum over all row rearrangements of the
    factors makes the map independent of representatives.
    """
    nu = check_partition(nu)
    if not tabs:
        return ModuleVector(tensor_space(nu, 0), {(): Fraction(1)})
    mu = tabs[0].shape
    m = sum(mu)
    if len(tabs) != sum(nu):
        raise UsageError(f"{len(tabs)} factors do not match |nu| = {sum(nu)}")
    arrangement_lists = [_row_arrangements(tab) for tab in tabs]
    out: dict = {}

    def build(arrs):
        target = []
        for j in range(m):
            rows = []
            pos = 0
            for part in nu:
                rows.append(tuple(sorted(arrs[i][j] for i in range(pos, pos + part))))
                pos += part
            target.append(Tabloid(tuple(rows)))
        return tuple(target)

    def rec(i: int, chosen):
        if i == len(arrangement_lists):
            key = build(chosen)
            out[key] = out.get(key, 0) + 1
            return
        for arr in arrangement_lists[i]:
            rec(i + 1, chosen + (arr,))

    rec(0, ())
    return ModuleVector(tensor_space(nu, m), out)


def fh_map_vector(pt: PlethysticTabloid, nu: Partition, mu: Partition) -> ModuleVector:
    """Image of one basis tabloid under phi o Psi o phi~ : M^{nu[mu]} -> M^{mu[nu]}."""
    out = ModuleVector(pleth_space(mu, nu), {})
    for tabs, coeff in phi_tilde_tabloid(pt).terms.items():
        stage = psi_tuple(tabs, nu)
        for target_tabs, ways in stage.terms.items():
            key = phi_tuple(target_tabs, mu)
            out.terms[key] = out.terms.get(key, Fraction(0)) + coeff * ways
    return ModuleVector(out.space, out.terms)


def fh_map_matrix(nu: Partition, mu: Partition, cap: int = BASIS_CAP):
    """Matrix of the generalized Foulkes-Howe map in the canonical bases.

    Columns are indexed by enumerate_basis(nu, mu), rows by
    enumerate_basis(mu, nu).
    """
    from .linalg import SparseRationalMatrix

    nu, mu = check_partition(nu), check_partition(mu)
    domain = enumerate_basis(nu, mu, cap)
    codomain_index = {pt: i for i, pt in enumerate(enumerate_basis(mu, nu, cap))}
    columns = []
    for pt in domain:
        image = fh_map_vector(pt, nu, mu)
        columns.append({codomain_index[key]: c for key, c in image.terms.items()})
    return SparseRationalMatrix.from_column_dicts(len(codomain_index), columns)


# ---------------------------------------------------------------------------
# union maps


def _merge_rows(rows1, rows2):
    """Interleave by decreasing length, first-argument rows leading ties."""
    tagged = [(-len(row), 0, i, row) for i, row in enumerate(rows1)]
    tagged += [(-len(row), 1, i, row) for i, row in enumerate(rows2)]
    tagged.sort(key=lambda t: t[:3])
    return tuple(t[3] for t in tagged)


def union_outer_iso(t1: PlethysticTabloid, t2: PlethysticTabloid) -> PlethysticTabloid:
    """Stack two plethystic tabloids of the same inner shape.

    Outer rows are interleaved by decreasing length with first-argument
    rows leading among equal lengths; this fixed convention makes the map
    a bijection onto the basis of the union shape.
    """
    if t1.inner_shape and t2.inner_shape and t1.inner_shape != t2.inner_shape:
        raise UsageError(f"inner shapes differ: {t1.inner_shape} vs {t2.inner_shape}")
    entries1, entries2 = t1.entries(), t2.entries()
    if entries1 & entries2:
        raise UsageError("entry sets overlap")
    total = len(entries1) + len(entries2)
    if set(entries1 | entries2) != set(range(1, total + 1)):
        raise UsageError(f"entries must jointly cover 1..{total}")
    return PlethysticTabloid(_merge_rows(t1.outer_rows, t2.outer_rows))


def split_outer(pt: PlethysticTabloid, nu1: Partition, nu2: Partition):
    """Inverse of union_outer_iso for a fixed decomposition nu1 u nu2."""
    if union_parts(nu1, nu2) != pt.outer_shape:
        raise UsageError(f"{nu1} u {nu2} != outer shape {pt.outer_shape}")
    counts1: dict[int, int] = {}
    for part in nu1:
        counts1[part] = counts1.get(part, 0) + 1
    rows1, rows2 = [], []
    taken: dict[int, int] = {}
    for row in pt.outer_rows:
        size = len(row)
        taken[size] = taken.get(size, 0) + 1
        if taken[size] <= counts1.get(size, 0):
            rows1.append(row)
        else:
            rows2.append(row)
    return (
        PlethysticTabloid(tuple(rows1)),
        PlethysticTabloid(tuple(rows2)),
    )


def union_inner_inject(t1: PlethysticTabloid, t2: PlethysticTabloid) -> ModuleVector:
    """Row-wise inner union, symmetrized over outer-row rearrangements.

    Sends {T1} x {T2} (same outer shape nu, inner shapes mu1 and mu2) into
    M^{nu[mu1 u mu2]} by pairing the inner tabloids positionally in every
    rearrangement of both factors.
    """
    nu = t1.outer_shape
    if t2.outer_shape != nu:
        raise UsageError(f"outer shapes differ: {nu} vs {t2.outer_shape}")
    entries1, entries2 = t1.entries(), t2.entries()
    if entries1 & entries2:
        raise UsageError("entry sets overlap")
    cover = entries1 | entries2
    if set(cover) != set(range(1, len(cover) + 1)):
        raise UsageError(f"entries must jointly cover 1..{len(cover)}")
    mu_union = union_parts(t1.inner_shape, t2.inner_shape)
    out: dict = {}

    def merged_tab(a: Tabloid, b: Tabloid) -> Tabloid:
        return Tabloid(_merge_rows(a.rows, b.rows))

    row_options1 = [list(permutations(row)) for row in t1.outer_rows]
    row_options2 = [list(permutations(row)) for row in t2.outer_rows]

    def rec(i: int, built):
        if i == len(nu):
            key = PlethysticTabloid(tuple(built))
            out[key] = out.get(key, Fraction(0)) + 1
            return
        for arr1 in row_options1[i]:
            for arr2 in row_options2[i]:
                row = tuple(
                    sorted(
                        (merged_tab(a, b) for a, b in zip(arr1, arr2)),
                        key=Tabloid.min_entry,
                    )
                )
                rec(i + 1, built + [row])

    rec(0, [])
    return ModuleVector(pleth_space(nu, mu_union), out)


def _order_iso(src: frozenset) -> dict:
    """Order-preserving relabeling of src onto 1..|src|."""
    return {x: i + 1 for i, x in enumerate(sorted(src))}


def union_compose_injection(f1, f2, nu1: Partition, nu2: Partition, mu: Partition,
                            cap: int = BASIS_CAP):
    """Composite injection M^{(nu1 u nu2)[mu]} -> M^{mu[nu1 u nu2]}.

    Built from the outer-union bijection, the tensor of the two injective
    maps f1: M^{nu1[mu]} -> M^{mu[nu1]} and f2 (likewise for nu2), and the
    inner-union injection.
    """
    from .linalg import SparseRationalMatrix, is_injective

    if not is_injective(f1):
        raise UsageError("first factor map is not injective")
    if not is_injective(f2):
        raise UsageError("second factor map is not injective")
    nu1, nu2, mu = check_partition(nu1), check_partition(nu2), check_partition(mu)
    nu = union_parts(nu1, nu2)
    domain = enumerate_basis(nu, mu, cap)
    codomain_index = {pt: i for i, pt in enumerate(enumerate_basis(mu, nu, cap))}
    basis1 = enumerate_basis(nu1, mu, cap)
    basis2 = enumerate_basis(nu2, mu, cap)
    index1 = {pt: i for i, pt in enumerate(basis1)}
    index2 = {pt: i for i, pt in enumerate(basis2)}
    image1 = enumerate_basis(mu, nu1, cap)
    image2 = enumerate_basis(mu, nu2, cap)

    columns = []
    for pt in domain:
        part1, part2 = split_outer(pt, nu1, nu2)
        map1 = _order_iso(part1.entries())
        map2 = _order_iso(part2.entries())
        back1 = {v: k for k, v in map1.items()}
        back2 = {v: k for k, v in map2.items()}
        std1 = relabel_pt(part1, map1) if part1.outer_rows else part1
        std2 = relabel_pt(part2, map2) if part2.outer_rows else part2
        col1 = f1.columns[index1[std1]]
        col2 = f2.columns[index2[std2]]
        column: dict = {}
        for r1, c1 in col1:
            u1 = relabel_pt(image1[r1], back1, expected=part1.entries())
            for r2, c2 in col2:
                u2 = relabel_pt(image2[r2], back2, expected=part2.entries())
                injected = union_inner_inject(u1, u2)
                for key, c in injected.terms.items():
                    idx = codomain_index[key]
                    column[idx] = column.get(idx, Fraction(0)) + c1 * c2 * c
        columns.append(column)
    return SparseRationalMatrix.from_column_dicts(len(codomain_index), columns)
