"""Exact symmetric-function algebra and plethysm coefficients.

Everything is computed over exact rationals in the power-sum basis; Schur
coefficients are extracted through symmetric-group characters.  A second,
fully independent route (monomial multiset counting plus a unitriangular
Kostka solve) ships as the brute-force oracle.
"""

from bisect import bisect_left, bisect_right
from fractions import Fraction
from functools import cache
from math import comb, factorial, lcm

from .errors import UsageError
from .partitions import (
    Partition,
    check_partition,
    enumerate_partitions,
    num_standard_tableaux,
    z_of,
)

BASES = ("P", "H", "M", "S")


class SymExpr:
    """Homogeneous symmetric function as a coefficient table over one basis.

    Zero coefficients are never stored; equality is table equality.  Treat
    instances as immutable after construction.
    """

    __slots__ = ("basis", "degree", "terms")

    def __init__(self, basis: str, degree: int, terms: dict):
        if basis not in BASES:
            raise UsageError(f"unknown basis {basis!r}")
        self.basis = basis
        self.degree = degree
        clean = {}
        for part, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            part = tuple(part)
            if sum(part) != degree:
                raise UsageError(
                    f"term {part} has size {sum(part)}, expected degree {degree}"
                )
            clean[part] = coeff
        self.terms = clean

    def coeff(self, part: Partition) -> Fraction:
        return self.terms.get(tuple(part), Fraction(0))

    def items(self):
        return self.terms.items()

    def support(self) -> list[Partition]:
        return sorted(self.terms, reverse=True)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymExpr)
            and self.basis == other.basis
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.basis, self.degree, frozenset(self.terms.items())))

    def __add__(self, other: "SymExpr") -> "SymExpr":
        self._check_compatible(other)
        out = dict(self.terms)
        for part, coeff in other.terms.items():
            out[part] = out.get(part, Fraction(0)) + coeff
        return SymExpr(self.basis, self.degree, out)

    def __sub__(self, other: "SymExpr") -> "SymExpr":
        self._check_compatible(other)
        out = dict(self.terms)
        for part, coeff in other.terms.items():
            out[part] = out.get(part, Fraction(0)) - coeff
        return SymExpr(self.basis, self.degree, out)

    def scale(self, c) -> "SymExpr":
        c = Fraction(c)
        return SymExpr(self.basis, self.degree, {p: c * v for p, v in self.terms.items()})

    def _check_compatible(self, other: "SymExpr"):
        if self.basis != other.basis or self.degree != other.degree:
            raise UsageError(
                f"basis/degree mismatch: ({self.basis},{self.degree}) vs "
                f"({other.basis},{other.degree})"
            )

    def to_json_dict(self) -> dict:
        return {
            "basis": self.basis,
            "degree": self.degree,
            "terms": [
                {
                    "partition": list(part),
                    "num": self.terms[part].numerator,
                    "den": self.terms[part].denominator,
                }
                for part in sorted(self.terms, reverse=True)
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SymExpr":
        terms = {
            tuple(t["partition"]): Fraction(t["num"], t["den"]) for t in data["terms"]
        }
        return cls(data["basis"], data["degree"], terms)

    def __repr__(self):
        body = " + ".join(
            f"{coeff}*{self.basis.lower()}{list(part)}"
            for part, coeff in sorted(self.terms.items(), reverse=True)
        )
        return body or "0"


# ---------------------------------------------------------------------------
# power-sum arithmetic and plethysm


@cache
def h_to_p(lam: Partition) -> SymExpr:
    """Power-sum expansion of the complete homogeneous function h_lam."""
    lam = check_partition(lam)
    out = SymExpr("P", 0, {(): Fraction(1)})
    for part in lam:
        single = SymExpr(
            "P", part, {rho: Fraction(1, z_of(rho)) for rho in enumerate_partitions(part)}
        )
        out = multiply_p(out, single)
    return out


def multiply_p(f: SymExpr, g: SymExpr) -> SymExpr:
    """Bilinear product in basis P: p_a * p_b = p_{a union b}."""
    if f.basis != "P" or g.basis != "P":
        raise UsageError("multiply_p needs both factors in basis P")
    out: dict = {}
    for pa, ca in f.terms.items():
        for pb, cb in g.terms.items():
            key = tuple(sorted(pa + pb, reverse=True))
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return SymExpr("P", f.degree + g.degree, out)


def plethysm(f: SymExpr, g: SymExpr) -> SymExpr:
    """f[g] in basis P.

    p_k[g] re-indexes every p_j in g to p_{jk}; the operation extends to f
    as an algebra morphism in its first argument.
    """
    if f.basis != "P" or g.basis != "P":
        raise UsageError("plethysm needs both arguments in basis P")

    def scaled(k: int) -> dict:
        return {tuple(j * k for j in rho): c for rho, c in g.terms.items()}

    scaled_cache: dict[int, dict] = {}
    out: dict = {}
    for kappa, c in f.terms.items():
        prod: dict = {(): Fraction(1)}
        for k in kappa:
            if k not in scaled_cache:
                scaled_cache[k] = scaled(k)
            nxt: dict = {}
            for pa, ca in prod.items():
                for pb, cb in scaled_cache[k].items():
                    key = tuple(sorted(pa + pb, reverse=True))
                    nxt[key] = nxt.get(key, Fraction(0)) + ca * cb
            prod = nxt
        for key, value in prod.items():
            out[key] = out.get(key, Fraction(0)) + c * value
    return SymExpr("P", f.degree * g.degree, out)


@cache
def plethysm_h(nu: Partition, mu: Partition) -> SymExpr:
    """h_nu[h_mu] in basis P; degree |nu|*|mu|."""
    nu = check_partition(nu)
    mu = check_partition(mu)
    return plethysm(h_to_p(nu), h_to_p(mu))


# ---------------------------------------------------------------------------
# characters of the symmetric group

# Partitions are handled through beta-sets (first-column hook lengths):
# moving a beta-number up by r adds a border strip of size r, and the sign
# is (-1)^(number of occupied positions jumped over).


def _beta(lam: Partition, length: int) -> tuple[int, ...]:
    padded = lam + (0,) * (length - len(lam))
    return tuple(padded[i] + (length - 1 - i) for i in range(length))


def _from_beta(beta: tuple[int, ...]) -> Partition:
    length = len(beta)
    return tuple(
        x for x in (beta[i] - (length - 1 - i) for i in range(length)) if x
    )


class CharacterTable:
    """Memoized irreducible character values of one symmetric group.

    Safe for concurrent readers: entries are only ever inserted, values are
    deterministic, and a duplicated computation is harmless.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self._values: dict = {}
        self._columns: dict = {}
        self._index = {lam: i for i, lam in enumerate(enumerate_partitions(degree))}

    def partitions(self) -> list[Partition]:
        return sorted(self._index, key=self._index.get)

    def value(self, lam: Partition, mu: Partition) -> int:
        """chi^lam(mu) by the Murnaghan-Nakayama border-strip recursion."""
        lam, mu = tuple(lam), tuple(mu)
        if sum(lam) != sum(mu):
            raise UsageError(f"size mismatch: {lam} vs {mu}")
        return self._value(lam, tuple(sorted(mu, reverse=True)))

    def _value(self, lam: Partition, mu: Partition) -> int:
        if not mu:
            return 1
        if mu[-1] == 1 and all(m == 1 for m in mu):
            return num_standard_tableaux(lam)
        key = (lam, mu)
        hit = self._values.get(key)
        if hit is not None:
            return hit
        r = mu[0]
        rest = mu[1:]
        length = len(lam)
        beta = sorted(_beta(lam, length))
        bset = set(beta)
        total = 0
        for b in beta:
            low = b - r
            if low < 0 or low in bset:
                continue
            crossings = bisect_left(beta, b) - bisect_right(beta, low)
            sign = -1 if crossings % 2 else 1
            nxt = sorted((x for x in beta if x != b), reverse=True)
            pos = 0
            while pos < len(nxt) and nxt[pos] > low:
                pos += 1
            nxt.insert(pos, low)
            total += sign * self._value(_from_beta(tuple(nxt)), rest)
        self._values[key] = total
        return total

    def column(self, mu: Partition) -> dict:
        """All chi^lam(mu) for lam of this degree, as a dict lam -> int.

        Built upward: p_mu is expanded in the Schur basis by adding border
        strips part by part (small parts first keeps intermediates small);
        a run of 1-parts is seeded directly with hook-length dimensions.
        """
        mu = tuple(sorted(mu, reverse=True))
        hit = self._columns.get(mu)
        if hit is not None:
            return hit
        ones = sum(1 for m in mu if m == 1)
        bigger = sorted((m for m in mu if m > 1))
        length = self.degree if self.degree else 1
        state: dict[tuple[int, ...], int] = {}
        for lam in enumerate_partitions(ones):
            state[_beta(lam, length)] = num_standard_tableaux(lam)
        for r in bigger:
            nxt: dict[tuple[int, ...], int] = {}
            for beta, coeff in state.items():
                bset = set(beta)
                for i in range(length):
                    b = beta[i]
                    high = b + r
                    if high in bset:
                        continue
                    crossings = sum(1 for x in beta if b < x < high)
                    value = -coeff if crossings % 2 else coeff
                    key = tuple(sorted(bset - {b} | {high}, reverse=True))
                    nxt[key] = nxt.get(key, 0) + value
            state = nxt
        col = {}
        for beta, coeff in state.items():
            if coeff:
                col[_from_beta(beta)] = coeff
        self._columns[mu] = col
        return col


_TABLES: dict[int, CharacterTable] = {}


def character_table(degree: int) -> CharacterTable:
    table = _TABLES.get(degree)
    if table is None:
        table = _TABLES.setdefault(degree, CharacterTable(degree))
    return table


def character_value(lam: Partition, mu: Partition) -> int:
    """chi^lam(mu), exact."""
    lam, mu = check_partition(lam), check_partition(mu)
    if sum(lam) != sum(mu):
        raise UsageError(f"size mismatch: {lam} vs {mu}")
    return character_table(sum(lam)).value(lam, mu)


def schur_coefficient(f: SymExpr, lam: Partition):
    """<f, s_lam> for f in basis P: sum over mu of coeff(mu) * chi^lam(mu)."""
    lam = check_partition(lam)
    if f.basis != "P":
        raise UsageError("schur_coefficient expects basis P")
    if sum(lam) != f.degree:
        raise UsageError(f"size mismatch: |{lam}| != degree {f.degree}")
    table = character_table(f.degree)
    return sum((c * table.value(lam, mu) for mu, c in f.terms.items()), Fraction(0))


def schur_expand(f: SymExpr) -> SymExpr:
    """Full Schur expansion of a basis-P expression."""
    if f.basis != "P":
        raise UsageError("schur_expand expects basis P")
    table = character_table(f.degree)
    denom = lcm(*(c.denominator for c in f.terms.values())) if f.terms else 1
    acc: dict[Partition, int] = {}
    for mu, c in f.terms.items():
        scaled = c.numerator * (denom // c.denominator)
        for lam, chi in table.column(mu).items():
            acc[lam] = acc.get(lam, 0) + scaled * chi
    return SymExpr("S", f.degree, {lam: Fraction(v, denom) for lam, v in acc.items() if v})


_EXPANSIONS: dict[tuple[Partition, Partition], SymExpr] = {}


def plethysm_schur(nu: Partition, mu: Partition) -> SymExpr:
    """Cached Schur expansion of h_nu[h_mu]."""
    key = (tuple(nu), tuple(mu))
    hit = _EXPANSIONS.get(key)
    if hit is None:
        hit = _EXPANSIONS.setdefault(key, schur_expand(plethysm_h(*key)))
    return hit


def plethysm_coefficient(nu: Partition, mu: Partition, lam: Partition) -> int:
    """Coefficient of s_lam in h_nu[h_mu]; a nonnegative integer."""
    nu, mu, lam = check_partition(nu), check_partition(mu), check_partition(lam)
    if sum(lam) != sum(nu) * sum(mu):
        raise UsageError(f"|{lam}| != |{nu}|*|{mu}|")
    value = plethysm_schur(nu, mu).coeff(lam)
    assert value.denominator == 1 and value >= 0
    return int(value)


# ---------------------------------------------------------------------------
# Kostka numbers


def _horizontal_strips(lam: Partition, size: int):
    """Yield all rho with lam/rho a horizontal strip of the given size."""
    lam = lam + (0,)

    def rec(i: int, remaining: int, prefix: tuple[int, ...]):
        if i == len(lam) - 1:
            if remaining == 0:
                yield tuple(x for x in prefix if x)
            return
        lo = max(lam[i + 1], lam[i] - remaining)
        hi = lam[i] if i == 0 else min(lam[i], prefix[-1])
        for v in range(hi, lo - 1, -1):
            yield from rec(i + 1, remaining - (lam[i] - v), prefix + (v,))

    yield from rec(0, size, ())


@cache
def kostka(lam: Partition, content: Partition) -> int:
    """Number of semistandard tableaux of shape lam and content `content`."""
    lam, content = check_partition(lam), check_partition(content)
    if sum(lam) != sum(content):
        raise UsageError(f"size mismatch: {lam} vs {content}")
    if not content:
        return 1
    return sum(kostka(rho, content[:-1]) for rho in _horizontal_strips(lam, content[-1]))


# ---------------------------------------------------------------------------
# monomial oracle: plethysm coefficients by brute multiset counting


def _monomials(degree: int, nvars: int):
    """All exponent vectors of the given total degree in nvars variables."""

    def rec(i: int, remaining: int, prefix: tuple[int, ...]):
        if i == nvars - 1:
            yield prefix + (remaining,)
            return
        for v in range(remaining, -1, -1):
            yield from rec(i + 1, remaining - v, prefix + (v,))

    if nvars == 0:
        if degree == 0:
            yield ()
        return
    yield from rec(0, degree, ())


def _convolve(a: dict, b: dict, bound=None) -> dict:
    out: dict = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = tuple(x + y for x, y in zip(wa, wb))
            if bound is not None and any(x > y for x, y in zip(w, bound)):
                continue
            out[w] = out.get(w, 0) + ca * cb
    return out


def _h_part_table(m: int, nvars: int, bound=None) -> dict:
    table = {}
    for w in _monomials(m, nvars):
        if bound is not None and any(x > y for x, y in zip(w, bound)):
            continue
        table[w] = 1
    return table


def _h_mu_table(mu: Partition, nvars: int, bound=None) -> dict:
    zero = tuple([0] * nvars)
    out = {zero: 1}
    for part in mu:
        out = _convolve(out, _h_part_table(part, nvars, bound), bound)
    return out


def _multiset_plethysm(n: int, table: dict, nvars: int, bound=None) -> dict:
    """Weight table of h_n evaluated at the multiset of monomials in `table`.

    Counts size-n multisets drawn from the monomials (with multiplicity c a
    monomial contributes comb(c+j-1, j) ways of being picked j times).
    """
    zero = tuple([0] * nvars)
    states: dict = {(0, zero): 1}
    for alpha, mult in sorted(table.items()):
        nxt: dict = {}
        for (count, weight), ways in states.items():
            j = 0
            w = weight
            while count + j <= n:
                if j:
                    w = tuple(x + j * y for x, y in zip(weight, alpha))
                    if bound is not None and any(x > y for x, y in zip(w, bound)):
                        break
                key = (count + j, w)
                nxt[key] = nxt.get(key, 0) + ways * comb(mult + j - 1, j)
                j += 1
        states = nxt
    return {w: ways for (count, w), ways in states.items() if count == n}


def monomial_oracle_expand(nu: Partition, mu: Partition, k: int) -> dict:
    """Full weight table of h_nu[h_mu] as a polynomial in k variables.

    Keys are exponent vectors with trailing zeros stripped.  Intended for
    small degrees; the per-weight route below scales further.
    """
    nu, mu = check_partition(nu), check_partition(mu)
    if k < 1:
        raise UsageError(f"need at least one variable, got k={k}")
    base = _h_mu_table(mu, k)
    zero = tuple([0] * k)
    out = {zero: 1}
    for part in nu:
        out = _convolve(out, _multiset_plethysm(part, base, k))
    result = {}
    for w, c in out.items():
        while w and w[-1] == 0:
            w = w[:-1]
        result[w] = c
    return result


def oracle_monomial_coefficient(nu: Partition, mu: Partition, weight) -> int:
    """Coefficient of x^weight in h_nu[h_mu], by bounded multiset counting."""
    weight = tuple(weight)
    nvars = len(weight)
    if sum(weight) != sum(nu) * sum(mu):
        raise UsageError("weight has wrong total degree")
    if nvars == 0:
        return 1
    base = _h_mu_table(mu, nvars, weight)
    zero = tuple([0] * nvars)
    out = {zero: 1}
    for part in nu:
        out = _convolve(out, _multiset_plethysm(part, base, nvars, weight), weight)
    return out.get(weight, 0)


def oracle_schur_expand(nu: Partition, mu: Partition) -> SymExpr:
    """Schur expansion of h_nu[h_mu] via the monomial oracle.

    Monomial coefficients are read off at partition weights and the
    unitriangular Kostka system is solved in reverse-lexicographic order.
    Fully independent of the character route.
    """
    nu, mu = check_partition(nu), check_partition(mu)
    degree = sum(nu) * sum(mu)
    parts = enumerate_partitions(degree)
    m_coeffs = {lam: oracle_monomial_coefficient(nu, mu, lam) for lam in parts}
    schur: dict[Partition, int] = {}
    for lam in parts:  # rev-lex order refines dominance, so (d) comes first
        value = m_coeffs[lam]
        for kappa, a in schur.items():
            if a:
                value -= a * kostka(kappa, lam)
        if value:
            schur[lam] = value
    return SymExpr("S", degree, {lam: Fraction(v) for lam, v in schur.items()})
