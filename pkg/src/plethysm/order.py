"""The conjectured Schur-positivity order on integer partitions.

nu <= mu holds iff h_mu[h_nu] - h_nu[h_mu] is Schur positive.  Column
partitions (1^k) are degenerate (they compare both ways against too much)
and are excluded from poset scans unless explicitly re-admitted.
"""

from dataclasses import dataclass
from typing import Optional

from .errors import ResourceCapError, UsageError
from .partitions import (
    Partition,
    check_partition,
    format_partition,
    is_column,
    partitions_up_to,
)
from .symfunc import SymExpr, plethysm_h, schur_expand

MAX_DEGREE = 24


@dataclass(frozen=True)
class RelationVerdict:
    nu: Partition
    mu: Partition
    holds: bool
    witness: Optional[Partition]
    difference: SymExpr


_VERDICTS: dict = {}


def schur_difference(nu: Partition, mu: Partition, max_degree: int = MAX_DEGREE) -> SymExpr:
    """Schur expansion of h_mu[h_nu] - h_nu[h_mu]."""
    nu, mu = check_partition(nu), check_partition(mu)
    if not nu or not mu:
        raise UsageError("relation is defined for nonempty partitions")
    degree = sum(nu) * sum(mu)
    if degree > max_degree:
        raise ResourceCapError(
            f"pair ({nu}, {mu}) has degree {degree} > cap {max_degree}"
        )
    return schur_expand(plethysm_h(mu, nu)) - schur_expand(plethysm_h(nu, mu))


def is_le(nu: Partition, mu: Partition, max_degree: int = MAX_DEGREE) -> RelationVerdict:
    """Verdict for nu <= mu, with a witness partition when it fails."""
    key = (tuple(nu), tuple(mu))
    hit = _VERDICTS.get(key)
    if hit is not None:
        return hit
    diff = schur_difference(nu, mu, max_degree)
    negatives = sorted((lam for lam, c in diff.items() if c < 0), reverse=True)
    witness = negatives[-1] if negatives else None  # rev-lex smallest
    verdict = RelationVerdict(key[0], key[1], witness is None, witness, diff)
    _VERDICTS[key] = verdict
    return verdict


@dataclass
class PosetResult:
    nodes: list[Partition]
    edges: list[tuple[Partition, Partition]]
    uncomputed: list[tuple[Partition, Partition]]
    equivalences: list[tuple[Partition, Partition]]

    def to_json_dict(self) -> dict:
        return {
            "nodes": [list(p) for p in self.nodes],
            "edges": [[list(a), list(b)] for a, b in self.edges],
            "uncomputed": [[list(a), list(b)] for a, b in self.uncomputed],
            "equivalences": [[list(a), list(b)] for a, b in self.equivalences],
        }


def _pairwise_relation(nodes, max_degree):
    """Compute the relation on all ordered pairs, tracking uncomputable ones."""
    le: dict[tuple[Partition, Partition], bool] = {}
    uncomputed = []
    seen = set()
    for a in nodes:
        for b in nodes:
            if a == b:
                continue
            try:
                le[(a, b)] = is_le(a, b, max_degree).holds
            except ResourceCapError:
                pair = (min(a, b), max(a, b))
                if pair not in seen:
                    seen.add(pair)
                    uncomputed.append(pair)
    return le, uncomputed


def hasse_diagram(nodes, max_degree: int = MAX_DEGREE,
                  include_columns: bool = False) -> PosetResult:
    """Covering relations (transitive reduction) of the strict relation.

    Pairs beyond the degree cap are reported as uncomputed instead of
    failing the whole graph.
    """
    nodes = sorted({check_partition(p) for p in nodes}, key=lambda p: (sum(p), p))
    if not include_columns:
        nodes = [p for p in nodes if not is_column(p)]
    le, uncomputed = _pairwise_relation(nodes, max_degree)
    strict = {
        (a, b)
        for (a, b), holds in le.items()
        if holds and not le.get((b, a), False)
    }
    equivalences = sorted(
        {
            (min(a, b), max(a, b))
            for (a, b), holds in le.items()
            if holds and le.get((b, a), False)
        }
    )
    edges = []
    for a, b in sorted(strict):
        if any((a, c) in strict and (c, b) in strict for c in nodes):
            continue
        edges.append((a, b))
    return PosetResult(nodes, edges, sorted(uncomputed), equivalences)


def transitivity_scan(nodes, max_degree: int = MAX_DEGREE) -> tuple[list, list]:
    """Triples (a, b, c) with a<=b and b<=c but not a<=c; conjecture: none.

    Returns (violations, uncomputed_pairs); uncomputable pairs are reported,
    never silently skipped.
    """
    nodes = sorted({check_partition(p) for p in nodes}, key=lambda p: (sum(p), p))
    le, uncomputed = _pairwise_relation(nodes, max_degree)
    violations = []
    for a in nodes:
        for b in nodes:
            if a == b or not le.get((a, b), False):
                continue
            for c in nodes:
                if c in (a, b) or not le.get((b, c), False):
                    continue
                if (a, c) in le and not le[(a, c)]:
                    violations.append((a, b, c))
    return violations, uncomputed


def antisymmetry_scan(nodes, max_degree: int = MAX_DEGREE) -> tuple[list, list]:
    """Distinct pairs related both ways; empty once columns are excluded."""
    nodes = sorted({check_partition(p) for p in nodes}, key=lambda p: (sum(p), p))
    le, uncomputed = _pairwise_relation(nodes, max_degree)
    violations = sorted(
        {
            (min(a, b), max(a, b))
            for (a, b), holds in le.items()
            if holds and le.get((b, a), False)
        }
    )
    return violations, uncomputed


def poset_nodes(max_size: int, include_columns: bool = False) -> list[Partition]:
    """All partitions of size <= max_size eligible for poset scans."""
    nodes = partitions_up_to(max_size)
    if not include_columns:
        nodes = [p for p in nodes if not is_column(p)]
    return nodes


def to_dot(result: PosetResult) -> str:
    lines = ["digraph plethysm_order {"]
    for node in result.nodes:
        lines.append(f'  "{format_partition(node)}";')
    for a, b in result.edges:
        lines.append(f'  "{format_partition(a)}" -> "{format_partition(b)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
