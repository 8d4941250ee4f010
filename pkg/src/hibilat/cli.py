"""Command-line interface.

Exit codes: 0 when everything checked passes (or the queried point is
smooth), 2 on a singular point or a violated check, 1 on usage, input or
internal errors.  With ``--json`` stdout carries exactly one JSON document
on every path, errors included.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import classify, diamonds, formats, harness, polytope, smooth
from .errors import InternalConsistencyError, LatticeError
from .lattice import Lattice, chain_product

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2

THEOREMS = {
    "a": ["theorem-a"],
    "b": ["theorem-b"],
    "c": ["theorem-c", "oracle-agreement"],
    "tree-honest": ["tree-honest"],
    "lemmas": ["lemma-chain", "bijection", "lemma-inequality", "lemma-greater"],
    "structure": ["structure", "birkhoff-roundtrip", "dual"],
    "rank": ["rank-structure"],
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class Output:
    def __init__(self, json_mode: bool):
        self.json_mode = json_mode

    def emit(self, payload: dict, text: str):
        if self.json_mode:
            print(json.dumps(payload, indent=2, sort_keys=True))
        else:
            print(text)


# argument plumbing

def _common(p: argparse.ArgumentParser, lattice_input: bool = True):
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--json", dest="json", action="store_true", help="machine output")
    mode.add_argument("--text", dest="json", action="store_false", help="aligned text (default)")
    p.add_argument("--max-size", type=int, default=None,
                   help="cap on |L| (default: $LATTICE_MAX_SIZE or 4096)")
    if lattice_input:
        p.add_argument("path", nargs="?", help="poset or fixture JSON (join-irreducible form)")
        src = p.add_mutually_exclusive_group()
        src.add_argument("--from-ji", metavar="PATH", help="join-irreducible poset JSON")
        src.add_argument("--from-lattice", metavar="PATH", help="raw Hasse diagram JSON")
        src.add_argument("--chains", metavar="N1,N2,...", help="product of chains")


def _family(p: argparse.ArgumentParser):
    fam = p.add_mutually_exclusive_group()
    fam.add_argument("--all-posets", type=int, metavar="N", help="posets on 0..N elements")
    fam.add_argument("--chain-products", type=int, metavar="N", help="chain products with |L| <= N")
    fam.add_argument("--random-trees", type=int, metavar="K", help="K seeded random tree lattices")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-depth", type=int, default=3)
    p.add_argument("--max-branches", type=int, default=3)
    p.add_argument("--labeled", action="store_true",
                   help="all-posets: every labeled poset instead of one labeling per linear extension")
    p.add_argument("--out", metavar="FILE", help="also write the JSON report here")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hibilat", description="Distributive lattices, Hibi ideals and smoothness.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="lattice summary")
    _common(p)

    p = sub.add_parser("classify", help="tree / honest / square classification")
    _common(p)

    p = sub.add_parser("diamonds", help="diamonds, relations and partner sets")
    _common(p)

    p = sub.add_parser("smoothness", help="Jacobian verdicts at coordinate points")
    _common(p)
    p.add_argument("--point", help="element label or join-irreducible name")

    p = sub.add_parser("polytope", help="order polytope and vertex cones")
    _common(p)

    p = sub.add_parser("decompose", help="chain-product decomposition of a square lattice")
    _common(p)

    p = sub.add_parser("prune", help="remove a maximal join-irreducible")
    _common(p)
    p.add_argument("--beta", required=True, help="maximal join-irreducible to remove")

    p = sub.add_parser("export", help="DOT, relations, polytope and JSON files")
    _common(p)
    p.add_argument("--dot", action="store_true", help="Hasse diagrams of the lattice and of J")
    p.add_argument("--relations", action="store_true", help="generators, one per line")
    p.add_argument("--polytope", action="store_true", help="vertex matrix and edge list")
    p.add_argument("--lattice-json", action="store_true", help="lattice as JSON")
    p.add_argument("--out", metavar="DIR", help="write files here instead of stdout")

    p = sub.add_parser("verify", help="check a theorem over a family or one lattice")
    _common(p)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--theorem", choices=sorted(THEOREMS))
    which.add_argument("--lemmas", action="store_const", const="lemmas", dest="theorem")
    _family(p)

    p = sub.add_parser("campaign", help="run named checks over a family")
    _common(p, lattice_input=False)
    _family(p)
    p.add_argument("--checks", default=",".join(harness.ALL_CHECKS),
                   help="comma-separated check names")
    return parser


def _ints(text: str, flag: str) -> list[int]:
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}") from None
    if not out or any(n < 1 for n in out):
        raise UsageError(f"{flag} expects positive integers, got {text!r}")
    return out


def load_lattice(args) -> Lattice:
    if args.chains:
        return chain_product(_ints(args.chains, "--chains"), max_size=args.max_size)
    if args.from_lattice:
        return formats.load_raw(args.from_lattice)
    if args.from_ji:
        return formats.load_ji(args.from_ji, args.max_size)
    if args.path:
        return formats.load_auto(args.path, args.max_size)
    raise UsageError("give a lattice: PATH, --from-ji, --from-lattice or --chains")


def family_spec(args) -> harness.FamilySpec | None:
    if args.all_posets is not None:
        return harness.FamilySpec("all-posets", n=args.all_posets, n_min=0,
                                  labeled=args.labeled, max_size=args.max_size)
    if args.chain_products is not None:
        return harness.FamilySpec("chain-products", n=args.chain_products, max_size=args.max_size)
    if args.random_trees is not None:
        return harness.FamilySpec("random-trees", count=args.random_trees, seed=args.seed,
                                  max_depth=args.max_depth, max_branches=args.max_branches,
                                  max_size=args.max_size)
    return None


def _has_lattice_input(args) -> bool:
    return any(getattr(args, k, None) for k in ("path", "from_ji", "from_lattice", "chains"))


def _table(rows: list[list], header: list[str]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


# subcommands

def cmd_build(args, out: Output) -> int:
    L = load_lattice(args)
    payload = {"lattice": L.name, "size": len(L), "paper_ji_count": L.ji_count_paper,
               "codim": L.codim, "dim": L.dimension}
    out.emit(payload, f"|L|={len(L)} |J|={L.ji_count_paper} codim={L.codim} dim={L.dimension}")
    return EXIT_OK


def cmd_classify(args, out: Output) -> int:
    L = load_lattice(args)
    rep = classify.classification_report(L)
    text = "\n".join(f"{k:<7} {rep[k]}" for k in ("tree", "honest", "square", "factors"))
    if rep["lemma_violations"]:
        text += f"\nlemma violations: {len(rep['lemma_violations'])}"
    out.emit(rep, text)
    return EXIT_VIOLATION if rep["lemma_violations"] else EXIT_OK


def cmd_diamonds(args, out: Output) -> int:
    L = load_lattice(args)
    ds = diamonds.enumerate_diamonds(L)
    gens = diamonds.ideal_generators(L)
    parts = diamonds.partner_sets_all(L)
    lab = L.label
    payload = {
        "lattice": L.name,
        "elements": formats.element_table(L),
        "diamonds": [{"x": lab(d.x), "y": lab(d.y), "join": lab(d.top), "meet": lab(d.bottom)}
                     for d in ds],
        "relations": [g.format() for g in gens],
        "partners": {lab(a): sorted((lab(g) for g in parts[a]), key=L.element)
                     for a in range(len(L))},
    }
    text = [f"{len(ds)} diamonds"]
    text += [f"  {{{lab(d.x)}, {lab(d.y)}}}  join {lab(d.top)}  meet {lab(d.bottom)}  :  "
             + g.format(lab) for d, g in zip(ds, gens)]
    out.emit(payload, "\n".join(text))
    return EXIT_OK


def cmd_smoothness(args, out: Output) -> int:
    L = load_lattice(args)
    if args.point is not None:
        v = smooth.is_smooth_at(L, args.point)
        payload = {"lattice": L.name, "id": L.label(v.alpha), "rank": v.rank,
                   "codim": v.codim, "verdict": v.verdict}
        out.emit(payload, v.describe())
        return EXIT_OK if v.smooth else EXIT_VIOLATION
    rep = smooth.smoothness_report(L)
    rows = [[p.label, p.E, p.rank, p.codim, p.verdict] for p in rep.points]
    text = (f"{rep.lattice}: |L|={rep.size} |J|={rep.ji_count} codim={rep.codim}\n"
            + _table(rows, ["id", "E", "rank", "codim", "verdict"])
            + f"\norigin: {rep.origin}")
    out.emit(rep.to_dict(), text)
    return EXIT_OK if rep.all_smooth else EXIT_VIOLATION


def cmd_polytope(args, out: Output) -> int:
    L = load_lattice(args)
    P = polytope.order_polytope(L)
    edges = polytope.polytope_edges(P)
    reports = [polytope.vertex_cone_report(P, i, edges) for i in range(len(L))]
    ok = all(r.unimodular for r in reports)
    payload = {"lattice": L.name, "ambient_dim": P.ambient_dim, "vertices": len(L),
               "edges": [[a, b] for a, b in edges], "cones": [r.to_dict() for r in reports],
               "all_unimodular": ok}
    rows = [[r.label, len(r.edge_directions), r.determinant if r.simple else "-", r.reason]
            for r in reports]
    text = (f"dim {P.ambient_dim}, {len(L)} vertices, {len(edges)} edges\n"
            + _table(rows, ["vertex", "edges", "det", "cone"]))
    out.emit(payload, text)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_decompose(args, out: Output) -> int:
    L = load_lattice(args)
    dec = classify.decompose_chain_product(L)
    payload = {"lattice": L.name, "factors": dec.factor_sizes,
               "branches": [[str(e) for e in br] for br in dec.branches],
               "coordinates": {L.label(a): list(dec.iso[a]) for a in range(len(L))}}
    text = " x ".join(f"c({n})" for n in dec.factor_sizes)
    text += "".join(f"\n  c({n}): {' < '.join(map(str, br))}"
                    for n, br in zip(dec.factor_sizes, dec.branches))
    out.emit(payload, text)
    return EXIT_OK


def cmd_prune(args, out: Output) -> int:
    L = load_lattice(args)
    pr = classify.prune(L, args.beta)
    S = pr.sublattice
    payload = {"lattice": L.name, "beta": str(pr.beta), "pruned_size": len(S),
               "pruned_paper_ji_count": S.ji_count_paper,
               "pruned": [L.label(a) for a in pr.embedding],
               "complement": [L.label(a) for a in pr.complement]}
    text = (f"L_beta: |L|={len(S)} |J|={S.ji_count_paper} codim={S.codim}\n"
            f"B_beta: {', '.join(L.label(a) for a in pr.complement)}")
    out.emit(payload, text)
    return EXIT_OK


def cmd_export(args, out: Output) -> int:
    L = load_lattice(args)
    if not (args.dot or args.relations or args.polytope or args.lattice_json):
        raise UsageError("export needs at least one of --dot, --relations, --polytope, --lattice-json")
    files: dict[str, str] = {}
    if args.dot:
        files["lattice.dot"] = formats.lattice_dot(L)
        files["jposet.dot"] = formats.jposet_dot(L)
    if args.relations:
        files["relations.txt"] = formats.relations_text(L)
    if args.polytope:
        P = polytope.order_polytope(L)
        files["vertices.txt"] = polytope.vertex_matrix_text(P)
        files["edges.txt"] = polytope.edge_list_text(P)
    if args.lattice_json:
        files["lattice.json"] = formats.lattice_json(L)
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for name, body in files.items():
            with open(d / name, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(body)
        out.emit({"written": [str(d / n) for n in files]},
                 "\n".join(str(d / n) for n in files))
    elif out.json_mode:
        out.emit({"files": files}, "")
    else:
        sys.stdout.write("".join(files.values()))
    return EXIT_OK


def _campaign(args, out: Output, checks: list[str]) -> int:
    spec = family_spec(args)
    if spec is not None and _has_lattice_input(args):
        raise UsageError("give either a lattice or a family flag, not both")
    if spec is None:
        if not _has_lattice_input(args):
            raise UsageError("give a family (--all-posets, --chain-products, --random-trees) or a lattice")
        L = load_lattice(args)
        rep = harness.run_lattices([L], checks, {"kind": "single", "lattice": L.name})
    else:
        rep = harness.run_campaign(spec, checks)
    body = rep.to_json()
    if args.out:
        Path(args.out).write_text(body + "\n", encoding="utf-8")
    if out.json_mode:
        print(body)
    else:
        print(rep.summary())
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_verify(args, out: Output) -> int:
    return _campaign(args, out, THEOREMS[args.theorem])


def cmd_campaign(args, out: Output) -> int:
    args.path = args.from_ji = args.from_lattice = args.chains = None
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    return _campaign(args, out, checks)


COMMANDS = {
    "build": cmd_build, "classify": cmd_classify, "diamonds": cmd_diamonds,
    "smoothness": cmd_smoothness, "polytope": cmd_polytope, "decompose": cmd_decompose,
    "prune": cmd_prune, "export": cmd_export, "verify": cmd_verify, "campaign": cmd_campaign,
}


def _fail(json_mode: bool, kind: str, message: str) -> int:
    if json_mode:
        print(json.dumps({"error": kind, "message": message}, indent=2, sort_keys=True))
    else:
        print(f"error: {message}", file=sys.stderr)
    return EXIT_ERROR


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    json_mode = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, Output(args.json))
    except UsageError as e:
        return _fail(json_mode, "UsageError", str(e))
    except InternalConsistencyError as e:
        return _fail(json_mode, type(e).__name__, f"internal consistency failure: {e}")
    except LatticeError as e:
        msg = e.args[0] if e.args else str(e)
        return _fail(json_mode, type(e).__name__, str(msg))
    except OSError as e:
        return _fail(json_mode, type(e).__name__, str(e))


if __name__ == "__main__":
    sys.exit(main())
