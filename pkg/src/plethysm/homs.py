"""Polytabloids, semistandard tableaux and the homomorphism route to
plethysm coefficients, plus the join-based stability lifts.

Shapes follow the cell order: row 0 is the longest row, cells are listed
row by row left to right, and "column strict" means strictly increasing
with the row index.
"""

from fractions import Fraction
from itertools import permutations
from typing import NamedTuple

from .errors import UsageError
from .linalg import span_rank
from .partitions import (
    Partition,
    add_parts,
    check_partition,
    conjugate,
    enumerate_partitions,
    repeat,
)
from .perms import distinct_permutations, parity
from .symfunc import plethysm_coefficient
from .tabloids import (
    ModuleVector,
    Tabloid,
    phi_tuple,
    pleth_space,
    tabloid_space,
)


class BijectiveTableau(NamedTuple):
    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)


class FilledTableau(NamedTuple):
    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    @property
    def content(self) -> tuple[int, ...]:
        counts: dict[int, int] = {}
        for row in self.rows:
            for v in row:
                counts[v] = counts.get(v, 0) + 1
        if not counts:
            return ()
        return tuple(counts.get(i, 0) for i in range(1, max(counts) + 1))


def rlex_filling(shape: Partition) -> BijectiveTableau:
    """The row-reading filling 1..n in cell order."""
    shape = check_partition(shape)
    rows = []
    nxt = 1
    for part in shape:
        rows.append(tuple(range(nxt, nxt + part)))
        nxt += part
    return BijectiveTableau(tuple(rows))


def is_semistandard(tab: FilledTableau) -> bool:
    rows = tab.rows
    for row in rows:
        if any(row[i] > row[i + 1] for i in range(len(row) - 1)):
            return False
    for r in range(1, len(rows)):
        for c in range(len(rows[r])):
            if rows[r][c] <= rows[r - 1][c]:
                return False
    return True


def enumerate_ssyt(shape: Partition, content: Partition) -> list[FilledTableau]:
    """All semistandard tableaux of the given shape and content."""
    shape = check_partition(shape)
    content = check_partition(content)
    if sum(shape) != sum(content):
        raise UsageError(f"size mismatch: {shape} vs {content}")
    remaining = list(content)
    rows = [[0] * part for part in shape]
    out: list[FilledTableau] = []

    def cells():
        for r, part in enumerate(shape):
            for c in range(part):
                yield r, c

    cell_list = list(cells())

    def rec(i: int):
        if i == len(cell_list):
            out.append(FilledTableau(tuple(tuple(row) for row in rows)))
            return
        r, c = cell_list[i]
        lo = rows[r][c - 1] if c > 0 else 1
        for v in range(lo, len(remaining) + 1):
            if remaining[v - 1] == 0:
                continue
            if r > 0 and v <= rows[r - 1][c]:
                continue
            rows[r][c] = v
            remaining[v - 1] -= 1
            rec(i + 1)
            remaining[v - 1] += 1
        rows[r][c] = 0

    rec(0)
    return out


def f_t(tau: FilledTableau, t: BijectiveTableau) -> Tabloid:
    """Tabloid of shape content(tau): t's entry at a cell goes to the row
    named by tau's value at that cell."""
    if tau.shape != t.shape:
        raise UsageError(f"shape mismatch: {tau.shape} vs {t.shape}")
    content = tau.content
    check_partition(content)
    target: list[list[int]] = [[] for _ in content]
    for trow, vrow in zip(t.rows, tau.rows):
        for entry, value in zip(trow, vrow):
            target[value - 1].append(entry)
    return Tabloid(tuple(tuple(sorted(row)) for row in target))


def _row_class(tau: FilledTableau):
    """Distinct row rearrangements of tau."""
    per_row = [list(distinct_permutations(row)) for row in tau.rows]

    def rec(i: int, prefix):
        if i == len(per_row):
            yield FilledTableau(prefix)
            return
        for row in per_row[i]:
            yield from rec(i + 1, prefix + (row,))

    yield from rec(0, ())


def theta_hat(tau: FilledTableau, t: BijectiveTableau) -> ModuleVector:
    """Sum of f_t over the row-equivalence class of tau."""
    if tau.shape != t.shape:
        raise UsageError(f"shape mismatch: {tau.shape} vs {t.shape}")
    out: dict = {}
    for tau2 in _row_class(tau):
        key = f_t(tau2, t)
        out[key] = out.get(key, Fraction(0)) + 1
    return ModuleVector(tabloid_space(tau.content), out)


def _signed_column_moves(shape: Partition):
    """Signed cell permutations generating the column group of the shape.

    Yields (sigma, sign) where sigma maps row index r to its source row,
    one entry per column; columns of height 1 are left implicit.
    """
    heights = conjugate(shape)
    per_column = []
    for c, h in enumerate(heights):
        if h == 1:
            continue
        moves = [(c, perm, parity(perm)) for perm in permutations(range(h))]
        per_column.append(moves)

    def rec(i: int, chosen, sign):
        if i == len(per_column):
            yield chosen, sign
            return
        for c, perm, s in per_column[i]:
            yield from rec(i + 1, chosen + ((c, perm),), sign * s)

    yield from rec(0, (), 1)


def _apply_column_moves(tau: FilledTableau, moves) -> FilledTableau:
    rows = [list(row) for row in tau.rows]
    for c, perm in moves:
        for r in range(len(perm)):
            rows[r][c] = tau.rows[perm[r]][c]
    return FilledTableau(tuple(tuple(row) for row in rows))


def _has_column_repeat(tau: FilledTableau) -> bool:
    rows = tau.rows
    for c in range(len(rows[0]) if rows else 0):
        seen = set()
        for row in rows:
            if c >= len(row):
                break
            if row[c] in seen:
                return True
            seen.add(row[c])
    return False


_THETA_CACHE: dict = {}
_THETA_CACHE_LIMIT = 4096


def theta(tau: FilledTableau, t: BijectiveTableau) -> ModuleVector:
    """Image of the polytabloid e(t) under the homomorphism named by tau.

    Row rearrangements with a repeated entry in some column contribute
    cancelling pairs, so they are skipped wholesale.  Results are cached;
    the same tau recurs across every outer shape of one content.
    """
    if tau.shape != t.shape:
        raise UsageError(f"shape mismatch: {tau.shape} vs {t.shape}")
    cache_key = (tau.rows, t.rows)
    hit = _THETA_CACHE.get(cache_key)
    if hit is not None:
        return hit
    out: dict = {}
    all_moves = list(_signed_column_moves(tau.shape))
    for tau2 in _row_class(tau):
        if _has_column_repeat(tau2):
            continue
        for moves, sign in all_moves:
            key = f_t(_apply_column_moves(tau2, moves), t)
            out[key] = out.get(key, Fraction(0)) + sign
    result = ModuleVector(tabloid_space(tau.content), out)
    if len(_THETA_CACHE) >= _THETA_CACHE_LIMIT:
        _THETA_CACHE.clear()
    _THETA_CACHE[cache_key] = result
    return result


def polytabloid(t: BijectiveTableau) -> ModuleVector:
    """e(t): signed sum of {pi . t} over the column group."""
    identity = FilledTableau(t.rows)
    out: dict = {}
    for moves, sign in _signed_column_moves(t.shape):
        moved = _apply_column_moves(identity, moves)
        key = Tabloid(tuple(tuple(sorted(row)) for row in moved.rows))
        out[key] = out.get(key, Fraction(0)) + sign
    return ModuleVector(tabloid_space(t.shape), out)


# ---------------------------------------------------------------------------
# the plethystic route


def _infer_inner(content: tuple[int, ...], n: int) -> Partition:
    """Recover mu from content = mu^n."""
    content = check_partition(content)
    mult: dict[int, int] = {}
    for part in content:
        mult[part] = mult.get(part, 0) + 1
    mu = []
    for part in sorted(mult, reverse=True):
        if mult[part] % n:
            raise UsageError(f"content {content} is not of the form mu^{n}")
    for part in sorted(mult, reverse=True):
        mu.extend([part] * (mult[part] // n))
    return tuple(mu)


def _factor_row_indices(mu: Partition, n: int) -> list[tuple[int, ...]]:
    """Row indices of mu^n taken by each tensor factor.

    Within each run of equal-size rows, factor i takes the i-th block; the
    convention is a fixed equivariant bijection.
    """
    stacked = repeat(mu, n)
    by_size: dict[int, list[int]] = {}
    for idx, size in enumerate(stacked):
        by_size.setdefault(size, []).append(idx)
    factors = []
    for i in range(n):
        rows = []
        seen: dict[int, int] = {}
        for part in mu:
            j = seen.get(part, 0)
            seen[part] = j + 1
            rows.append(by_size[part][i * mu.count(part) + j])
        factors.append(tuple(rows))
    return factors


def encode_tensor_factors(tab: Tabloid, mu: Partition, n: int) -> tuple[Tabloid, ...]:
    """Split a tabloid of shape mu^n into the n tensor factors of shape mu."""
    if tab.shape != repeat(mu, n):
        raise UsageError(f"shape {tab.shape} is not {mu}^{n}")
    plan = _factor_row_indices(mu, n)
    return tuple(Tabloid(tuple(tab.rows[r] for r in rows)) for rows in plan)


def theta_bar(tau: FilledTableau, t: BijectiveTableau, nu: Partition) -> ModuleVector:
    """phi composed with theta, landing in M^{nu[mu]} for content = mu^n."""
    nu = check_partition(nu)
    n = sum(nu)
    mu = _infer_inner(tau.content, n)
    image = theta(tau, t)
    plan = _factor_row_indices(mu, n)
    out: dict = {}
    for tab, coeff in image.terms.items():
        factors = tuple(Tabloid(tuple(tab.rows[r] for r in rows)) for rows in plan)
        key = phi_tuple(factors, nu)
        out[key] = out.get(key, Fraction(0)) + coeff
    return ModuleVector(pleth_space(nu, mu), out)


def ssh_rank(lam: Partition, nu: Partition, mu: Partition) -> int:
    """Rank of the semistandard generating set; equals the coefficient of
    s_lam in h_nu[h_mu]."""
    lam, nu, mu = check_partition(lam), check_partition(nu), check_partition(mu)
    n = sum(nu)
    if sum(lam) != n * sum(mu):
        raise UsageError(f"|{lam}| != |{nu}|*|{mu}|")
    t = rlex_filling(lam)
    content = repeat(mu, n)
    vectors = [theta_bar(tau, t, nu) for tau in enumerate_ssyt(lam, content)]
    return span_rank([v for v in vectors if not v.is_zero()])


# ---------------------------------------------------------------------------
# joins and stability lifts


def join(tau1: FilledTableau, tau2: FilledTableau) -> FilledTableau:
    """Row-wise concatenation; shapes add componentwise."""
    if len(tau2.rows) > len(tau1.rows):
        raise UsageError(
            f"second factor has {len(tau2.rows)} rows > {len(tau1.rows)}"
        )
    add_parts(tau1.shape, tau2.shape)  # validates the joined shape
    rows = []
    for i, row in enumerate(tau1.rows):
        extra = tau2.rows[i] if i < len(tau2.rows) else ()
        rows.append(row + extra)
    return FilledTableau(tuple(rows))


def _single_row_tableau(content: Partition) -> FilledTableau:
    row = []
    for i, count in enumerate(content):
        row.extend([i + 1] * count)
    return FilledTableau((tuple(row),))


def stability_lift_h(tau: FilledTableau, mu_tilde: Partition, n: int) -> FilledTableau:
    """Append the unique single-row tableau of content mu_tilde^n.

    The result has shape lam + (n*|mu_tilde|) and content (mu+mu_tilde)^n;
    it is generally not semistandard, which the homomorphisms tolerate.
    """
    mu_tilde = check_partition(mu_tilde)
    if not mu_tilde:
        return tau
    _infer_inner(tau.content, n)  # validates the mu^n form
    return join(tau, _single_row_tableau(repeat(mu_tilde, n)))


def stability_lift_2col(tau: FilledTableau, n: int) -> FilledTableau:
    """Prepend the two-column tableau whose row r holds (r, r).

    The result has shape lam + (2^(n*len(mu))) and content (mu+(2^len(mu)))^n
    and stays semistandard when tau is.
    """
    mu = _infer_inner(tau.content, n)
    height = n * len(mu)
    if len(tau.rows) > height:
        raise UsageError(f"shape {tau.shape} has more than {height} rows")
    block = FilledTableau(tuple((r, r) for r in range(1, height + 1)))
    return join(block, tau)


def verify_stability(nu: Partition, mu: Partition, mu_tilde: Partition,
                     mode: str = "h", exhibit_cap: int = 6) -> dict:
    """Check the lifted-coefficient inequality over every lam of degree nm.

    Within the exhibit cap the lifted homomorphism family is expanded
    exactly: every nonzero theta_bar must lift to a nonzero one, and the
    lifted family must have rank at least the original coefficient.
    """
    nu, mu = check_partition(nu), check_partition(mu)
    mu_tilde = check_partition(mu_tilde)
    n, m = sum(nu), sum(mu)
    if mode == "h":
        mu_target = add_parts(mu, mu_tilde)
        growth = (n * sum(mu_tilde),) if mu_tilde else ()
    elif mode == "2col":
        width = len(mu)
        mu_target = add_parts(mu, (2,) * width)
        growth = (2,) * (n * width)
    else:
        raise UsageError(f"unknown mode {mode!r}")

    exhibit = n * m <= exhibit_cap and mu_target != mu
    content = repeat(mu, n)
    results = []
    all_hold = True
    for lam in enumerate_partitions(n * m):
        r = plethysm_coefficient(nu, mu, lam)
        lam_lifted = add_parts(lam, growth) if growth else lam
        lifted = plethysm_coefficient(nu, mu_target, lam_lifted)
        holds = lifted >= r
        all_hold = all_hold and holds
        entry = {
            "lambda": list(lam),
            "r": r,
            "lifted": lifted,
            "inequality_holds": holds,
            "witness_tableau": None,
        }
        if exhibit:
            t = rlex_filling(lam)
            t_lifted = rlex_filling(lam_lifted)
            lifted_vectors = []
            for tau in enumerate_ssyt(lam, content):
                image = theta_bar(tau, t, nu)
                if mode == "h":
                    tau_hat = stability_lift_h(tau, mu_tilde, n)
                else:
                    tau_hat = stability_lift_2col(tau, n)
                lifted_image = theta_bar(tau_hat, t_lifted, nu)
                if not image.is_zero():
                    if lifted_image.is_zero():
                        raise AssertionError(
                            f"lift of a nonzero homomorphism vanished at {lam}"
                        )
                    if entry["witness_tableau"] is None:
                        entry["witness_tableau"] = [list(row) for row in tau_hat.rows]
                lifted_vectors.append(lifted_image)
            lifted_rank = span_rank([v for v in lifted_vectors if not v.is_zero()])
            assert lifted_rank >= r, f"lifted family rank {lifted_rank} < {r} at {lam}"
            entry["lifted_family_rank"] = lifted_rank
        results.append(entry)
    return {
        "nu": list(nu),
        "mu": list(mu),
        "mu_tilde": list(mu_tilde),
        "mode": mode,
        "all_hold": all_hold,
        "results": results,
    }
