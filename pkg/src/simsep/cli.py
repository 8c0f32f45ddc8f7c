"""Command-line interface.

Exit codes: 0 success/verified, 1 usage error, 2 input error,
3 verification failure, 4 solver budget exceeded.

Input files hold either a FamilyDocument (.json) or Newick trees
(.nwk, one tree per line); --format overrides the extension inference.
Every emitted outcome is re-verified against its cut vector before
printing.  SIMSEP_THREADS sets the default for --threads.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

from . import constructive, generators, io_formats, phylo
from .errors import BudgetExceededError, SimsepError
from .solver import KERNEL_NAME, SolverBudget, best_separation, best_separation_naive
from .trees import SeparationOutcome, TreeFamily, make_family, verify_outcome

USAGE_ERROR, INPUT_ERROR, VERIFY_ERROR, BUDGET_ERROR = 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _load_family(path: str, fmt: str | None) -> TreeFamily:
    if fmt is None:
        fmt = "newick" if path.endswith((".nwk", ".newick", ".tree")) else "json"
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(INPUT_ERROR) from exc
    try:
        if fmt == "newick":
            trees = [
                io_formats.parse_newick(line)
                for line in text.strip().splitlines()
                if line.strip()
            ]
            return make_family(trees)
        return io_formats.parse_family_json(text)
    except SimsepError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(INPUT_ERROR) from exc


def _outcome_json(outcome: SeparationOutcome) -> dict:
    return {
        "value": outcome.value,
        "orientation_b": list(outcome.orientation_b),
        "cut": [
            {"tree_index": c.tree_index, "edge_id": c.edge_id, "anchor": c.anchor}
            for c in outcome.cut.cuts
        ],
        "X": sorted(outcome.X.labels()),
        "Y": sorted(outcome.Y.labels()),
        "provenance": outcome.provenance,
    }


def _emit(family: TreeFamily, outcome: SeparationOutcome, as_json: bool, extra=None):
    verify_outcome(family, outcome)  # never print an unverified witness
    if as_json:
        doc = _outcome_json(outcome)
        if extra:
            doc.update(extra)
        print(json.dumps(doc, sort_keys=True))
    else:
        print(f"value: {outcome.value}")
        print(
            "cut:",
            " ".join(f"T{c.tree_index}:e{c.edge_id}" for c in outcome.cut.cuts),
            " b:",
            "".join(str(b) for b in outcome.orientation_b),
        )
        print("X:", sorted(outcome.X.labels()))
        print("Y:", sorted(outcome.Y.labels()))
        print("provenance:", outcome.provenance)
        for key, val in (extra or {}).items():
            print(f"{key}: {val}")


def _cmd_solve(args) -> int:
    family = _load_family(args.input, args.format)
    budget = SolverBudget(
        max_cut_vectors=args.budget, parallel_chunks=max(1, args.threads)
    )
    try:
        outcome = best_separation(family, budget)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BUDGET_ERROR
    n, k = family.n, len(family.trees)
    extra = {"n": n, "k": k, "kernel": KERNEL_NAME}
    if k == 2:
        extra["bound_n_over_6"] = f"{outcome.value} vs n/6 = {n / 6:.2f}"
    if k == 3:
        extra["bound_2n_over_27"] = f"{outcome.value} vs 2n/27 = {2 * n / 27:.2f}"
    _emit(family, outcome, args.json, extra)
    return 0


def _cmd_separate(args) -> int:
    family = _load_family(args.input, args.format)
    trees = family.trees
    k = len(trees)
    extra = {}
    try:
        if args.algo == "jordan":
            if k != 1:
                raise SimsepError(f"jordan expects 1 tree, got {k}")
            outcome = constructive.jordan_edge(trees[0])
        elif args.algo == "two":
            if k != 2:
                raise SimsepError(f"two expects 2 trees, got {k}")
            outcome = constructive.two_tree_separator(*trees)
        elif args.algo == "paths":
            outcome = constructive.path_family_separator(family)
        elif args.algo == "lower2":
            if k != 2:
                raise SimsepError(f"lower2 expects 2 trees, got {k}")
            outcome, trace = constructive.lower2_pair(*trees, slack=args.slack)
            extra["case_path"] = trace.case_path
        else:
            if k != 3:
                raise SimsepError(f"three expects 3 trees, got {k}")
            outcome = constructive.three_tree_separator(*trees, slack=args.slack)
    except SimsepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    _emit(family, outcome, args.json, extra)
    return 0


def _cmd_gen(args) -> int:
    kind, r, k, n, seed = args.kind, args.r, args.k, args.n, args.seed
    try:
        if kind == "h1-blowup":
            skel = generators.blowup(generators.balanced_spec(generators.gadget_h1(r), n))
            fam = make_family([generators.random_labeling(skel, "non_backbone", seed + i) for i in range(k)])
        elif kind == "h2-blowup":
            skel = generators.blowup(generators.balanced_spec(generators.gadget_h2(r), n))
            fam = make_family([generators.random_labeling(skel, "non_backbone", seed + i) for i in range(k)])
        elif kind == "caterpillar-blowup":
            host = generators.blowup_host_phylo_h1()
            skel = generators.blowup(generators.balanced_spec(host, n, "caterpillar"))
            fam = make_family([generators.random_labeling(skel, "leaves", seed + i) for i in range(k)])
        elif kind == "random-tree":
            fam = make_family([generators.random_bounded_tree(n, r, seed + i) for i in range(k)])
        elif kind == "random-phylo":
            fam = make_family([generators.random_phylo_tree(n, seed + i) for i in range(k)])
        elif kind == "stretch":
            q = args.q or max(2, int(math.isqrt(n - 1)))
            base = make_family([generators.random_bounded_tree(q, r, seed + i) for i in range(k)])
            fam = generators.stretch_family(base, n)
        else:  # hstar
            fam = generators.hstar_family(k, seed)
    except SimsepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    if args.out.endswith((".nwk", ".newick", ".tree")):
        text = "".join(io_formats.write_newick(t) + "\n" for t in fam.trees)
    else:
        text = io_formats.write_family_json(fam)
    with open(args.out, "w") as fh:
        fh.write(text)
    print(f"wrote {args.out}: k={len(fam.trees)} n={fam.n}")
    return 0


def _cmd_quartets(args) -> int:
    family = _load_family(args.input, args.format)
    try:
        if args.list:
            count, items = phylo.common_quartets(family, listing=True)
            for q in items:
                print(" ".join(map(str, q.taxa)), q.pairing)
        else:
            count = phylo.common_quartets(family)
    except SimsepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    print(f"common quartets: {count} / C({family.n},4)")
    return 0


def _parse_seed_range(text: str) -> range:
    lo, _, hi = text.partition("..")
    return range(int(lo), int(hi) + 1)


def _cmd_verify(args) -> int:
    seeds = _parse_seed_range(args.seeds)
    failures = []
    t0 = time.time()
    if args.suite == "oracle":
        import random as _random

        for s in seeds:
            rng = _random.Random(s)
            n, k = rng.randrange(4, 10), rng.randrange(2, 4)
            fam = make_family(
                [generators.random_bounded_tree(n, 3, s * 100 + j) for j in range(k)]
            )
            fast = best_separation(fam, SolverBudget())
            naive = best_separation_naive(fam)
            if fast != naive:
                failures.append(f"seed {s}: solver != oracle ({fast.value} vs {naive.value})")
    elif args.suite == "bounds":
        for s in seeds:
            t1 = generators.random_phylo_tree(90, s * 2 + 1)
            t2 = generators.random_phylo_tree(90, s * 2 + 2)
            o, _tr = constructive.lower2_pair(t1, t2)
            if o.value * 27 < 4 * 90:
                failures.append(f"seed {s}: lower2 min {o.value} < 4n/27")
            ot = constructive.two_tree_separator(t1, t2)
            if ot.value * 6 < 90:
                failures.append(f"seed {s}: two-tree {ot.value} < n/6")
            t3 = generators.random_phylo_tree(90, s * 2 + 3)
            o3 = constructive.three_tree_separator(t1, t2, t3)
            if o3.value * 27 < 2 * 90:
                failures.append(f"seed {s}: three-tree {o3.value} < 2n/27")
    else:  # concentration
        n = 2000
        limit = 5 * n ** (2 / 3)
        for s in list(seeds)[:3]:
            dev = phylo.concentration_probe("H1-pair", n, 7 + s, 200)
            if dev > limit:
                failures.append(f"seed {7 + s}: deviation {dev:.1f} > {limit:.1f}")
    for line in failures:
        print("FAIL:", line)
    status = "FAIL" if failures else "PASS"
    print(f"{status} suite={args.suite} seeds={args.seeds} ({time.time() - t0:.1f}s)")
    return VERIFY_ERROR if failures else 0


def _cmd_search_h3(args) -> int:
    fam = phylo.search_quartet_free_family(args.n, 3, args.seed, args.budget)
    if fam is None:
        print(f"no witness within {args.budget} moves", file=sys.stderr)
        return VERIFY_ERROR
    assert not phylo.has_common_quartet(fam)
    print(f"3 trees on [{args.n}] with no common quartet:")
    for t in fam.trees:
        print(io_formats.write_newick(t))
    return 0


def main(argv=None) -> int:
    parser = _Parser(prog="simsep", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    default_threads = int(os.environ.get("SIMSEP_THREADS", "1"))

    p = sub.add_parser("solve", help="exact optimal separation")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["json", "newick"])
    p.add_argument("--budget", type=int, default=50_000_000)
    p.add_argument("--threads", type=int, default=default_threads)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("separate", help="constructive separator algorithms")
    p.add_argument("--algo", required=True, choices=["jordan", "two", "paths", "lower2", "three"])
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["json", "newick"])
    p.add_argument("--slack", type=int, default=constructive.DEFAULT_SLACK)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_separate)

    p = sub.add_parser("gen", help="instance generators")
    p.add_argument("--kind", required=True, choices=[
        "h1-blowup", "h2-blowup", "caterpillar-blowup",
        "random-tree", "random-phylo", "stretch", "hstar",
    ])
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--q", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("quartets", help="count common quartets")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["json", "newick"])
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=_cmd_quartets)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=["bounds", "concentration", "oracle"])
    p.add_argument("--seeds", default="0..19")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search-h3", help="search for 3 trees with no common quartet")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=100_000)
    p.set_defaults(func=_cmd_search_h3)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SimsepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
