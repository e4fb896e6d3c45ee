"""Exact sparse rational matrices and fraction-free rank.

Columns are cleared to integers (rank is invariant under column scaling),
then eliminated pairwise with cross-multiplication and gcd reduction, so no
rational arithmetic happens inside the elimination loop.  No floating point
anywhere.
"""

from fractions import Fraction
from math import gcd, lcm

from .errors import UsageError


class SparseRationalMatrix:
    """Column-major sparse matrix with exact rational entries.

    columns[j] is a list of (row, value) pairs with strictly increasing row
    indices and no zero values.
    """

    def __init__(self, rows: int, cols: int, columns=None):
        self.rows = rows
        self.cols = cols
        self.columns: list[list[tuple[int, Fraction]]] = (
            [[] for _ in range(cols)] if columns is None else columns
        )

    @classmethod
    def from_column_dicts(cls, rows: int, cols: list[dict]) -> "SparseRationalMatrix":
        columns = []
        for col in cols:
            entries = sorted((r, Fraction(v)) for r, v in col.items() if v)
            for r, _ in entries:
                if not 0 <= r < rows:
                    raise UsageError(f"row index {r} out of range 0..{rows - 1}")
            columns.append(entries)
        return cls(rows, len(cols), columns)

    def nnz(self) -> int:
        return sum(len(col) for col in self.columns)

    def transpose(self) -> "SparseRationalMatrix":
        cols: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for r, v in col:
                cols[r].append((j, v))
        for col in cols:
            col.sort()
        return SparseRationalMatrix(self.cols, self.rows, cols)

    def _integer_columns(self) -> list[dict]:
        out = []
        for col in self.columns:
            if not col:
                out.append({})
                continue
            denom = lcm(*(v.denominator for _, v in col))
            ints = {r: int(v * denom) for r, v in col}
            g = gcd(*ints.values())
            if g > 1:
                ints = {r: v // g for r, v in ints.items()}
            out.append(ints)
        return out

    def rank(self, order: str = "sparsity", self_check: bool = False) -> int:
        """Exact rank over the rationals.

        order picks the column processing sequence ("sparsity", "index" or
        "reverse"); the result must not depend on it, and self_check=True
        verifies that by running a second order.
        """
        result = self._rank_once(order)
        if self_check:
            other = "reverse" if order != "reverse" else "index"
            alt = self._rank_once(other)
            assert result == alt, f"rank disagreement: {result} vs {alt}"
        return result

    def _rank_once(self, order: str) -> int:
        ints = self._integer_columns()
        idx = list(range(self.cols))
        if order == "sparsity":
            idx.sort(key=lambda j: (len(ints[j]), j))
        elif order == "reverse":
            idx.reverse()
        elif order != "index":
            raise UsageError(f"unknown pivot order {order!r}")
        # Each pivot column has its pivot at its own minimal row, so
        # eliminating the minimal row of the incoming column first only ever
        # introduces fill-in at strictly larger rows.
        pivots: dict[int, dict] = {}  # pivot row -> reduced integer column
        for j in idx:
            col = ints[j]
            while col:
                r = min(col)
                pcol = pivots.get(r)
                if pcol is None:
                    break
                col = _combine(pcol[r], col, col[r], pcol)
            if col:
                pivots[min(col)] = col
        return len(pivots)

    def to_coordinate_text(self) -> str:
        lines = [f"# {self.rows} {self.cols} {self.nnz()}"]
        for j, col in enumerate(self.columns):
            for r, v in col:
                lines.append(f"{r} {j} {v.numerator}/{v.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_coordinate_text(cls, text: str) -> "SparseRationalMatrix":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("#"):
            raise UsageError("coordinate text must start with '# rows cols nnz'")
        rows, cols, nnz = (int(x) for x in lines[0][1:].split())
        columns: list[dict] = [{} for _ in range(cols)]
        for line in lines[1:]:
            r, c, frac = line.split()
            num, den = frac.split("/")
            columns[int(c)][int(r)] = Fraction(int(num), int(den))
        matrix = cls.from_column_dicts(rows, columns)
        if matrix.nnz() != nnz:
            raise UsageError(f"header says {nnz} entries, found {matrix.nnz()}")
        return matrix


def _combine(pv: int, col: dict, cv: int, pcol: dict) -> dict:
    """Fraction-free row elimination: pv*col - cv*pcol, gcd-reduced."""
    out = {}
    for r, v in col.items():
        out[r] = pv * v
    for r, v in pcol.items():
        val = out.get(r, 0) - cv * v
        if val:
            out[r] = val
        else:
            out.pop(r, None)
    if out:
        g = gcd(*out.values())
        if g > 1:
            out = {r: v // g for r, v in out.items()}
    return out


def is_injective(matrix: SparseRationalMatrix) -> bool:
    """Full column rank."""
    if matrix.cols > matrix.rows:
        return False
    return matrix.rank() == matrix.cols


def vectors_to_matrix(vectors) -> SparseRationalMatrix:
    """Matrix whose columns are the given ModuleVectors in a shared basis."""
    vectors = list(vectors)
    if not vectors:
        return SparseRationalMatrix(0, 0)
    space = vectors[0].space
    for v in vectors:
        if v.space != space:
            raise UsageError(f"mixed spaces: {space} vs {v.space}")
    keys = sorted({key for v in vectors for key in v.terms})
    index = {key: i for i, key in enumerate(keys)}
    columns = [{index[key]: c for key, c in v.terms.items()} for v in vectors]
    return SparseRationalMatrix.from_column_dicts(len(keys), columns)


def span_rank(vectors) -> int:
    """Rank of the span of a family of ModuleVectors."""
    vectors = list(vectors)
    if not vectors:
        return 0
    return vectors_to_matrix(vectors).rank()
