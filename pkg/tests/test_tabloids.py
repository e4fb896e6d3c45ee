import random
from fractions import Fraction

import pytest

from plethysm.errors import ResourceCapError, UsageError
from plethysm.linalg import is_injective, span_rank
from plethysm.partitions import enumerate_partitions, union_parts
from plethysm.perms import compose, random_permutation
from plethysm.symfunc import plethysm_coefficient
from plethysm.tabloids import (
    ModuleVector,
    PlethysticTabloid,
    Tabloid,
    act,
    basis_dimension,
    canonicalize,
    count_basis,
    enumerate_basis,
    fh_map_matrix,
    fh_map_vector,
    iter_basis,
    phi,
    phi_tilde,
    phi_tilde_tabloid,
    phi_tuple,
    pleth_space,
    psi_tuple,
    split_outer,
    tabloid,
    union_compose_injection,
    union_inner_inject,
    union_outer_iso,
)

F = Fraction


def pt(*outer_rows):
    return canonicalize(outer_rows)


def test_tabloid_canonical_form():
    t = tabloid([(3, 1), (2,)])
    assert t.rows == ((1, 3), (2,))
    assert t.shape == (2, 1)
    with pytest.raises(UsageError):
        tabloid([(1, 1)])
    with pytest.raises(UsageError):
        tabloid([(1,), (2, 3)])  # rows must weakly decrease in length


def test_canonicalize_idempotent_and_sorts():
    raw = [[[(2, 6)], [(5, 1)]], [[(4, 3)]]]
    a = canonicalize(raw)
    assert a.outer_rows[0][0].rows == ((1, 5),)
    assert a.outer_rows[0][1].rows == ((2, 6),)
    assert canonicalize([[t.rows for t in row] for row in a.outer_rows]) == a


def test_canonicalize_outer_row_swap_invariance():
    a = canonicalize([[[(1, 2)], [(3, 4)]]])
    b = canonicalize([[[(3, 4)], [(1, 2)]]])
    assert a == b


def test_canonicalize_inner_row_permutation_invariance():
    a = canonicalize([[[(2, 1), (4, 3)]]])
    b = canonicalize([[[(1, 2), (3, 4)]]])
    assert a == b


def test_canonicalize_rejects_bad_entries():
    with pytest.raises(UsageError):
        canonicalize([[[(1, 2)], [(2, 3)]]])  # repeated entry
    with pytest.raises(UsageError):
        canonicalize([[[(1, 2)], [(4, 5)]]])  # gap in 1..4


def test_basis_counts_examples():
    assert len(enumerate_basis((2,), (3,))) == 10
    assert len(enumerate_basis((3,), (2,))) == 15
    assert len(enumerate_basis((1,), (2, 1))) == 3


def test_basis_count_formula_small():
    for a in range(1, 7):
        for b in range(1, 7):
            if a * b > 6:
                continue
            for nu in enumerate_partitions(a):
                for mu in enumerate_partitions(b):
                    elements = enumerate_basis(nu, mu)
                    assert len(elements) == basis_dimension(nu, mu)
                    assert len(set(elements)) == len(elements)
                    assert elements == sorted(elements)
                    assert count_basis(nu, mu) == len(elements)


def test_basis_cap():
    with pytest.raises(ResourceCapError, match="12"):
        enumerate_basis((2,), (2, 2, 2, 1))
    with pytest.raises(ResourceCapError, match="4"):
        list(iter_basis((2,), (3,), cap=4))


def test_act_identity_and_stabilizer():
    space = pleth_space((2,), (2,))
    elem = pt([[(1, 2)], [(3, 4)]])
    v = ModuleVector(space, {elem: F(1)})
    assert act({}, v) == v
    # swapping inside an inner row of an inner tabloid fixes the tabloid
    assert act({1: 2, 2: 1}, v) == v
    # swapping the two inner tabloids in an outer row fixes it too
    assert act({1: 3, 3: 1, 2: 4, 4: 2}, v) == v


def test_act_group_property_random():
    rng = random.Random(5)
    space = pleth_space((2, 1), (2,))
    basis = enumerate_basis((2, 1), (2,))
    for _ in range(50):
        v = ModuleVector(space, {rng.choice(basis): F(rng.randint(1, 5))})
        sigma = random_permutation(6, rng)
        rho = random_permutation(6, rng)
        assert act(sigma, act(rho, v)) == act(compose(sigma, rho), v)


def test_phi_places_factors_and_collapses_rows():
    t1, t2 = tabloid([(1, 2)]), tabloid([(3, 4)])
    assert phi_tuple((t1, t2), (2,)) == phi_tuple((t2, t1), (2,))
    assert phi_tuple((t1, t2), (1, 1)) != phi_tuple((t2, t1), (1, 1))


def test_phi_tilde_coefficients():
    # single-column outer shape: trivial rearrangement group
    elem = pt([[(1, 2)]], [[(3, 4)]])
    v = phi_tilde_tabloid(elem)
    assert v.terms == {(tabloid([(1, 2)]), tabloid([(3, 4)])): F(1)}
    # one outer row of two tabloids: two rearrangements, each 1/2
    elem2 = pt([[(1, 2)], [(3, 4)]])
    v2 = phi_tilde_tabloid(elem2)
    a, b = tabloid([(1, 2)]), tabloid([(3, 4)])
    assert v2.terms == {(a, b): F(1, 2), (b, a): F(1, 2)}


def test_phi_phi_tilde_identity_displayed_instance():
    # outer (2,1), inner (2,2) on 1..12
    elem = pt(
        [[(1, 9), (7, 11)], [(6, 10), (2, 8)]],
        [[(4, 12), (3, 5)]],
    )
    lifted = phi_tilde_tabloid(elem)
    assert len(lifted.terms) == 2
    assert set(lifted.terms.values()) == {F(1, 2)}
    assert phi(lifted, (2, 1)).terms == {elem: F(1)}


def test_phi_phi_tilde_identity_full_bases():
    for nu, mu in [((2,), (2,)), ((2, 1), (2,)), ((1, 1), (2, 1)), ((3,), (1, 1))]:
        for elem in iter_basis(nu, mu):
            assert phi(phi_tilde_tabloid(elem), nu).terms == {elem: F(1)}


def test_psi_trivial_row_groups_is_transpose():
    # mu = (1,1), nu = (1,1): single term, direct transpose
    t1 = tabloid([(1,), (2,)])
    t2 = tabloid([(3,), (4,)])
    v = psi_tuple((t1, t2), (1, 1))
    assert v.terms == {
        (tabloid([(1,), (3,)]), tabloid([(2,), (4,)])): F(1)
    }


def test_psi_displayed_instance():
    # mu=(2,2), nu=(2,1), factors on 1..12
    tabs = (
        tabloid([(1, 2), (3, 4)]),
        tabloid([(5, 6), (7, 8)]),
        tabloid([(9, 10), (11, 12)]),
    )
    v = psi_tuple(tabs, (2, 1))
    # total mass is (2!*2!)^3
    assert sum(v.terms.values()) == 64
    expected_first = (
        tabloid([(1, 5), (9,)]),
        tabloid([(2, 6), (10,)]),
        tabloid([(3, 7), (11,)]),
        tabloid([(4, 8), (12,)]),
    )
    assert expected_first in v.terms


def test_psi_representative_independence():
    # permuting entries within rows of the input factors leaves psi fixed,
    # because the symmetrizing sum ranges over the whole row group
    rng = random.Random(3)
    tabs = (tabloid([(1, 2), (3, 4)]), tabloid([(5, 6), (7, 8)]))
    base = psi_tuple(tabs, (2,))
    for _ in range(10):
        sigma = {}
        for tab in tabs:
            for row in tab.rows:
                shuffled = list(row)
                rng.shuffle(shuffled)
                sigma.update(dict(zip(row, shuffled)))
        moved = tuple(
            Tabloid(tuple(tuple(sorted(sigma[x] for x in row)) for row in tab.rows))
            for tab in tabs
        )
        assert moved == tabs  # row permutations fix the tabloids
        assert psi_tuple(moved, (2,)) == base


def test_fh_map_examples():
    m = fh_map_matrix((2,), (2,))
    assert (m.rows, m.cols, m.rank()) == (3, 3, 3)
    m = fh_map_matrix((2,), (3,))
    assert (m.rows, m.cols, m.rank()) == (15, 10, 10)
    assert is_injective(m)
    m = fh_map_matrix((1, 1), (2,))
    assert is_injective(m)


def test_fh_map_equivariance_random():
    rng = random.Random(17)
    cases = [((2,), (2,)), ((1, 1), (2,)), ((2,), (1, 1)), ((2, 1), (2,)), ((3,), (2,))]
    samples_per_case = 25
    for nu, mu in cases:
        n = sum(nu) * sum(mu)
        basis = enumerate_basis(nu, mu)
        for _ in range(samples_per_case):
            elem = rng.choice(basis)
            sigma = random_permutation(n, rng)
            v = ModuleVector(pleth_space(nu, mu), {elem: F(1)})
            left = fh_map_vector(tuple(act(sigma, v).terms)[0], nu, mu)
            right = act(sigma, fh_map_vector(elem, nu, mu))
            assert left == right


def test_phi_psi_equivariance_random():
    rng = random.Random(23)
    nu, mu = (2, 1), (2,)
    basis = enumerate_basis(nu, mu)
    space = pleth_space(nu, mu)
    for _ in range(40):
        elem = rng.choice(basis)
        sigma = random_permutation(6, rng)
        v = ModuleVector(space, {elem: F(1)})
        assert act(sigma, phi_tilde(v)) == phi_tilde(act(sigma, v))
        tabs = tuple(phi_tilde_tabloid(elem).terms)[0]
        moved_tabs = tuple(act(sigma, ModuleVector(("tensor", mu, 3), {tabs: F(1)})).terms)[0]
        assert act(sigma, psi_tuple(tabs, nu)) == psi_tuple(moved_tabs, nu)


def test_union_outer_iso_displayed_instance():
    # inner (3,2), two single-row outer factors on 1..20
    t1 = pt_raw = canonicalize(
        [[[(4, 19, 11), (8, 14)], [(13, 5, 9), (7, 20)]]],
        expected=(4, 19, 11, 8, 14, 13, 5, 9, 7, 20),
    )
    t2 = canonicalize(
        [[[(3, 17, 18), (1, 2)], [(6, 12, 10), (15, 16)]]],
        expected=(3, 17, 18, 1, 2, 6, 12, 10, 15, 16),
    )
    joined = union_outer_iso(t1, t2)
    assert joined.outer_shape == (2, 2)
    assert joined.outer_rows[0] == t1.outer_rows[0]
    assert joined.outer_rows[1] == t2.outer_rows[0]


def test_union_outer_iso_identity_and_errors():
    t1 = pt([[(1, 2)], [(3, 4)]])
    empty = PlethysticTabloid(())
    assert union_outer_iso(t1, empty) == t1
    with pytest.raises(UsageError):
        union_outer_iso(t1, t1)


def test_union_outer_iso_bijective_small():
    # nu1 = nu2 = (1), mu = (2): pairs of supports map onto the union basis
    from itertools import combinations

    images = set()
    pool = (1, 2, 3, 4)
    for support in combinations(pool, 2):
        rest = tuple(x for x in pool if x not in support)
        t1 = canonicalize([[[support]]], expected=support)
        t2 = canonicalize([[[rest]]], expected=rest)
        images.add(union_outer_iso(t1, t2))
    target = set(iter_basis((1, 1), (2,)))
    assert images == target


def test_split_outer_inverts_union():
    for elem in iter_basis((2, 1), (2,)):
        part1, part2 = split_outer(elem, (2,), (1,))
        assert union_outer_iso(part1, part2) == elem


def test_union_inner_inject_trivial_outer():
    # single-column outer shape: one term
    t1 = canonicalize([[[(1, 2)]], [[(5, 6)]]], expected=(1, 2, 5, 6))
    t2 = canonicalize([[[(3,)]], [[(4,)]]], expected=(3, 4))
    v = union_inner_inject(t1, t2)
    assert len(v.terms) == 1
    assert sum(v.terms.values()) == 1
    key = next(iter(v.terms))
    assert key.inner_shape == (2, 1)


def test_union_inner_inject_displayed_instance():
    # outer (2,2), inner (3) and (2) on 1..20
    t1 = canonicalize(
        [
            [[(3, 17, 18)], [(6, 10, 12)]],
            [[(4, 11, 19)], [(5, 9, 13)]],
        ],
        expected=(3, 17, 18, 6, 10, 12, 4, 11, 19, 5, 9, 13),
    )
    t2 = canonicalize(
        [
            [[(1, 2)], [(15, 16)]],
            [[(8, 14)], [(7, 20)]],
        ],
        expected=(1, 2, 15, 16, 8, 14, 7, 20),
    )
    v = union_inner_inject(t1, t2)
    assert sum(v.terms.values()) == (2 * 2) * (2 * 2)
    paired = canonicalize(
        [
            [[(3, 17, 18), (1, 2)], [(6, 10, 12), (15, 16)]],
            [[(4, 11, 19), (8, 14)], [(5, 9, 13), (7, 20)]],
        ]
    )
    assert paired in v.terms


def test_union_inner_inject_injective_small():
    # nu=(2), mu1=mu2=(1): matrix of the induced map has full column rank
    from itertools import combinations

    columns = []
    keys: dict = {}
    pool = (1, 2, 3, 4)
    for support in combinations(pool, 2):
        rest = tuple(x for x in pool if x not in support)
        t1 = canonicalize([[[(support[0],)], [(support[1],)]]], expected=support)
        t2 = canonicalize([[[(rest[0],)], [(rest[1],)]]], expected=rest)
        v = union_inner_inject(t1, t2)
        col = {}
        for key, c in v.terms.items():
            idx = keys.setdefault(key, len(keys))
            col[idx] = c
        columns.append(col)
    from plethysm.linalg import SparseRationalMatrix

    matrix = SparseRationalMatrix.from_column_dicts(len(keys), columns)
    assert matrix.rank() == matrix.cols


def test_union_compose_injection_small():
    f1 = fh_map_matrix((1,), (2,))
    comp = union_compose_injection(f1, f1, (1,), (1,), (2,))
    assert (comp.rows, comp.cols) == (12, 6)
    assert is_injective(comp)


def test_union_compose_injection_mixed():
    f1 = fh_map_matrix((1,), (2,))
    f2 = fh_map_matrix((1, 1), (2,))
    comp = union_compose_injection(f1, f2, (1,), (1, 1), (2,))
    assert is_injective(comp)


def test_union_compose_injection_column_append():
    # mu=(2) with one appended column cell: M^{(2,1)[(2)]} -> M^{(2)[(2,1)]}
    f_self = fh_map_matrix((2,), (2,))
    f_col = fh_map_matrix((1,), (2,))
    comp = union_compose_injection(f_self, f_col, (2,), (1,), (2,))
    assert (comp.rows, comp.cols) == (90, 45)
    assert is_injective(comp)


def test_union_compose_rejects_non_injective():
    from plethysm.linalg import SparseRationalMatrix

    bad = SparseRationalMatrix.from_column_dicts(2, [{}, {}])
    good = fh_map_matrix((1,), (2,))
    with pytest.raises(UsageError, match="first"):
        union_compose_injection(bad, good, (1,), (1,), (2,))
    with pytest.raises(UsageError, match="second"):
        union_compose_injection(good, bad, (1,), (1,), (2,))


def test_dimension_sum_matches_basis_size():
    from plethysm.partitions import num_standard_tableaux
    from plethysm.symfunc import plethysm_schur

    for nu, mu in [((2,), (2,)), ((2, 1), (2,)), ((2,), (3,)), ((1, 1), (2, 1))]:
        total = sum(
            int(c) * num_standard_tableaux(lam)
            for lam, c in plethysm_schur(nu, mu).items()
        )
        assert total == basis_dimension(nu, mu)
