"""Command-line front end.

Partitions are comma-separated parts, `/` separates positional partitions,
and a bare `--` is the empty partition (so parsing is done by hand rather
than through argparse).  All results print as canonical JSON on stdout;
diagnostics go to stderr.  Exit codes: 0 success/holds, 1 relation fails,
2 usage, 3 resource cap, 4 cross-check mismatch.
"""

import hashlib
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor

from .errors import ResourceCapError, UsageError
from .homs import ssh_rank, verify_stability
from .linalg import is_injective
from .order import (
    MAX_DEGREE,
    hasse_diagram,
    is_le,
    poset_nodes,
    to_dot,
)
from .partitions import parse_partition
from .symfunc import oracle_schur_expand, plethysm_h, plethysm_schur
from .tabloids import BASIS_CAP, fh_map_matrix

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_RELATION_FAILS = 1
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_MISMATCH = 4

GLOBAL_FLAGS = {
    "--max-degree": int,
    "--max-size": int,
    "--threads": int,
    "--mode": str,
    "--format": str,
    "--no-cache": None,
    "--force": None,
    "--schur": None,
    "--power-sum": None,
    "--oracle-check": None,
    "--cross-check": None,
    "--rank-only": None,
    "--dump": None,
    "--include-columns": None,
}


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _parse_args(argv: list[str]):
    """Split argv into positional tokens and a flag dict."""
    positionals: list[str] = []
    flags: dict = {}
    i = 0
    while i < len(argv):
        token = argv[i]
        if token == "--":
            positionals.append(token)
        elif token.startswith("--"):
            name, eq, inline = token.partition("=")
            if name not in GLOBAL_FLAGS:
                raise UsageError(f"unknown flag {name}")
            wants = GLOBAL_FLAGS[name]
            if wants is None:
                if eq:
                    raise UsageError(f"flag {name} takes no value")
                flags[name] = True
            elif eq:
                flags[name] = wants(inline)
            else:
                i += 1
                if i >= len(argv):
                    raise UsageError(f"flag {name} needs a value")
                flags[name] = wants(argv[i])
        else:
            positionals.append(token)
        i += 1
    return positionals, flags


def _split_partitions(tokens: list[str], expected: int):
    """Parse 'p / q / r' token groups into `expected` partitions."""
    groups: list[list[str]] = [[]]
    for token in tokens:
        if token == "/":
            groups.append([])
        else:
            groups[-1].append(token)
    if len(groups) != expected:
        raise UsageError(f"expected {expected} partitions separated by '/'")
    out = []
    for group in groups:
        if len(group) > 1:
            raise UsageError(f"cannot parse partition from {' '.join(group)!r}")
        out.append(parse_partition(group[0] if group else "--"))
    return tuple(out)


# ---------------------------------------------------------------------------
# result cache


def _cache_dir() -> str:
    env = os.environ.get("PLETHYSM_CACHE_DIR")
    if env:
        return env
    base = os.environ.get("XDG_CACHE_HOME", os.path.expanduser("~/.cache"))
    return os.path.join(base, "plethysm")


def _cache_key(op: str, args) -> str:
    payload = canonical_json([op, SCHEMA_VERSION, args])
    return hashlib.sha256(payload.encode()).hexdigest()


def cached(op: str, args, compute, use_cache: bool = True) -> str:
    """Return the canonical JSON text for op(args), via the content cache."""
    if not use_cache:
        return canonical_json(compute())
    directory = _cache_dir()
    path = os.path.join(directory, _cache_key(op, args) + ".json")
    if os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    text = canonical_json(compute())
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)
    return text


# ---------------------------------------------------------------------------
# subcommands


def cmd_plethysm(tokens, flags) -> int:
    (nu, mu) = _split_partitions(tokens, 2)
    max_degree = flags.get("--max-degree", MAX_DEGREE)
    degree = sum(nu) * sum(mu)
    if degree > max_degree and not flags.get("--force"):
        print(f"degree {degree} exceeds cap {max_degree}", file=sys.stderr)
        return EXIT_CAP
    power_sum = flags.get("--power-sum", False)

    def compute():
        if power_sum:
            return plethysm_h(nu, mu).to_json_dict()
        return plethysm_schur(nu, mu).to_json_dict()

    args = [list(nu), list(mu), "P" if power_sum else "S"]
    text = cached("plethysm", args, compute, not flags.get("--no-cache"))
    sys.stdout.write(text)
    if flags.get("--oracle-check"):
        expected = oracle_schur_expand(nu, mu)
        got = plethysm_schur(nu, mu)
        if expected != got:
            print("oracle mismatch", file=sys.stderr)
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_relation(tokens, flags) -> int:
    (nu, mu) = _split_partitions(tokens, 2)
    max_degree = flags.get("--max-degree", MAX_DEGREE)

    def compute():
        verdict = is_le(nu, mu, max_degree)
        return {
            "nu": list(nu),
            "mu": list(mu),
            "holds": verdict.holds,
            "witness": list(verdict.witness) if verdict.witness else None,
            "difference": verdict.difference.to_json_dict(),
        }

    text = cached("relation", [list(nu), list(mu), max_degree], compute,
                  not flags.get("--no-cache"))
    sys.stdout.write(text)
    return EXIT_OK if json.loads(text)["holds"] else EXIT_RELATION_FAILS


def cmd_poset(tokens, flags) -> int:
    if tokens:
        raise UsageError("poset takes no positional arguments")
    max_size = flags.get("--max-size", 4)
    if max_size > 6 and not flags.get("--force"):
        print(f"--max-size {max_size} > 6 needs --force", file=sys.stderr)
        return EXIT_CAP
    max_degree = flags.get("--max-degree", MAX_DEGREE)
    include_columns = flags.get("--include-columns", False)
    fmt = flags.get("--format", "json")
    threads = flags.get("--threads", 1)
    nodes = poset_nodes(max_size, include_columns)
    if threads > 1:
        # warm the pairwise verdict cache in parallel; assembly stays ordered
        pairs = [(a, b) for a in nodes for b in nodes if a != b
                 if sum(a) * sum(b) <= max_degree]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda p: is_le(p[0], p[1], max_degree), pairs))

    def compute():
        return hasse_diagram(nodes, max_degree, include_columns).to_json_dict()

    args = [max_size, max_degree, include_columns]
    text = cached("poset", args, compute, not flags.get("--no-cache"))
    if fmt == "dot":
        result = hasse_diagram(nodes, max_degree, include_columns)
        sys.stdout.write(to_dot(result))
    elif fmt == "json":
        sys.stdout.write(text)
    else:
        raise UsageError(f"unknown format {fmt!r}")
    return EXIT_OK


def cmd_fhmap(tokens, flags) -> int:
    (nu, mu) = _split_partitions(tokens, 2)
    cap = flags.get("--max-degree", BASIS_CAP)
    if sum(nu) * sum(mu) > cap and not flags.get("--force"):
        print(f"degree {sum(nu) * sum(mu)} exceeds cap {cap}", file=sys.stderr)
        return EXIT_CAP

    def compute():
        matrix = fh_map_matrix(nu, mu, max(cap, sum(nu) * sum(mu)))
        return {
            "rows": matrix.rows,
            "cols": matrix.cols,
            "nnz": matrix.nnz(),
            "rank": matrix.rank(),
            "injective": is_injective(matrix),
        }

    args = [list(nu), list(mu)]
    text = cached("fhmap", args, compute, not flags.get("--no-cache"))
    sys.stdout.write(text)
    if flags.get("--dump"):
        matrix = fh_map_matrix(nu, mu, max(cap, sum(nu) * sum(mu)))
        sys.stdout.write(matrix.to_coordinate_text())
    return EXIT_OK


def cmd_ssh_rank(tokens, flags) -> int:
    (lam, nu, mu) = _split_partitions(tokens, 3)

    def compute():
        return {"lambda": list(lam), "nu": list(nu), "mu": list(mu),
                "rank": ssh_rank(lam, nu, mu)}

    args = [list(lam), list(nu), list(mu)]
    text = cached("ssh-rank", args, compute, not flags.get("--no-cache"))
    sys.stdout.write(text)
    if flags.get("--cross-check"):
        from .symfunc import plethysm_coefficient

        if json.loads(text)["rank"] != plethysm_coefficient(nu, mu, lam):
            print("ssh-rank disagrees with the character route", file=sys.stderr)
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_stability(tokens, flags) -> int:
    (nu, mu, mu_tilde) = _split_partitions(tokens, 3)
    mode = flags.get("--mode", "h")
    if mode not in ("h", "2col"):
        raise UsageError(f"--mode must be h or 2col, not {mode!r}")

    def compute():
        return verify_stability(nu, mu, mu_tilde, mode)

    args = [list(nu), list(mu), list(mu_tilde), mode]
    text = cached("stability", args, compute, not flags.get("--no-cache"))
    sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    "plethysm": cmd_plethysm,
    "relation": cmd_relation,
    "poset": cmd_poset,
    "fhmap": cmd_fhmap,
    "ssh-rank": cmd_ssh_rank,
    "stability": cmd_stability,
}

USAGE = """usage: plethysm <command> [arguments] [flags]

commands:
  plethysm  NU / MU   [--schur|--power-sum] [--oracle-check]
  relation  NU / MU
  poset     [--max-size N] [--max-degree D] [--format dot|json] [--include-columns]
  fhmap     NU / MU   [--rank-only] [--dump]
  ssh-rank  LAMBDA / NU / MU   [--cross-check]
  stability NU / MU / MUTILDE  [--mode h|2col]

partitions are comma-separated parts, e.g. 3,2,1; `--` is the empty partition.
global flags: --max-degree D --max-size N --no-cache --force --threads N
"""


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help", "help"):
        sys.stdout.write(USAGE)
        return EXIT_OK
    command, rest = argv[0], argv[1:]
    handler = COMMANDS.get(command)
    if handler is None:
        print(f"unknown command {command!r}", file=sys.stderr)
        sys.stdout.write(USAGE)
        return EXIT_USAGE
    try:
        positionals, flags = _parse_args(rest)
        return handler(positionals, flags)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
