"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s``; the lines are
printed even without ``-s``.
"""

import json
import os
import subprocess
import sys
import time

from hibilat import FamilySpec, example_lattice, is_smooth_at, run_campaign
from hibilat.formats import example_fixture_path, jposet_dot, lattice_dot, relations_text
from hibilat.harness import ALL_CHECKS

LEMMAS = ["lemma-chain", "bijection", "lemma-inequality", "lemma-greater"]


def _report(capsys, number, title, ok, elapsed=None, limit=None, detail=""):
    timing = "" if elapsed is None else f" {elapsed:.2f}s"
    if limit is not None:
        timing += f" (limit {limit:g}s)"
        ok = ok and elapsed < limit
    with capsys.disabled():
        print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {title}{timing} {detail}".rstrip())
    return ok


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_1_worked_example(capsys):
    def work():
        L = example_lattice()
        return L, is_smooth_at(L, "3")

    (L, v), elapsed = _timed(work)
    ok = (len(L) == 10 and L.ji_count_paper == 5 and L.codim == 5
          and not v.smooth and v.rank == 4 and v.codim == 5)
    # p_3 = (0, 0, 1, 0, ..., 0): the single nonzero coordinate is the third one
    ok = ok and v.alpha == 2 and L.label(2) == "3"
    assert _report(capsys, 1, "ten-element example, p_3 singular with rank 4 < codim 5",
                   ok, elapsed, 1.0)


def test_criterion_2_partner_bound_on_chain_products(capsys):
    rep, elapsed = _timed(lambda: run_campaign(FamilySpec("chain-products", n=256), ["theorem-b"]))
    c = rep.counts["theorem-b"]
    ok = rep.ok and c["fail"] == 0 and c["skip"] == 0 and c["pass"] == rep.lattices
    assert _report(capsys, 2, f"|E_a| >= codim on {rep.lattices} chain products |L| <= 256",
                   ok, elapsed, 120)


def test_criterion_3_smooth_chain_products_two_oracles(capsys):
    rep, elapsed = _timed(lambda: run_campaign(FamilySpec("chain-products", n=128), ["theorem-c"]))
    c = rep.counts["theorem-c"]
    ok = rep.ok and c["pass"] == rep.lattices
    assert _report(capsys, 3, f"Jacobian and vertex-cone oracles agree, all smooth, "
                              f"{rep.lattices} chain products |L| <= 128", ok, elapsed, 300)


def test_criterion_4_tree_iff_honest(capsys):
    spec = FamilySpec("all-posets", n=5, n_min=0, labeled=True)
    rep, elapsed = _timed(lambda: run_campaign(spec, ["tree-honest"]))
    ok = rep.ok and rep.lattices == 1 + 1 + 3 + 19 + 219 + 4231
    tally = rep.distributions["tree_lattices"]
    assert _report(capsys, 4, f"tree == honest on {rep.lattices} labeled posets <= 5",
                   ok, elapsed, 60, detail=json.dumps(tally, sort_keys=True))


def test_criterion_5_structure_suite(capsys):
    spec = FamilySpec("all-posets", n=5, n_min=0, labeled=True)
    rep, elapsed = _timed(lambda: run_campaign(spec, ["structure", "birkhoff-roundtrip"]))
    ok = rep.ok and all(c["pass"] == rep.lattices for c in rep.counts.values())
    assert _report(capsys, 5, f"lattice laws, chains, diamonds, splitting on {rep.lattices} lattices",
                   ok, elapsed)


def test_criterion_6_pruning_suite(capsys):
    def work():
        trees = run_campaign(FamilySpec("random-trees", count=100, seed=7), LEMMAS)
        squares = run_campaign(FamilySpec("chain-products", n=128), LEMMAS)
        return trees, squares

    (trees, squares), elapsed = _timed(work)
    ok = trees.ok and squares.ok and trees.lattices == 100
    ok = ok and all(c["fail"] == 0 for c in trees.counts.values())
    ok = ok and all(c["pass"] == squares.lattices for c in squares.counts.values())
    deviations = [o for o in trees.observations + squares.observations
                  if "two_factor_equality_deviations" in o]
    ok = ok and not deviations
    assert _report(capsys, 6, f"pruning lemmas on 100 random trees and {squares.lattices} "
                              f"chain products, equality on two-factor products",
                   ok, elapsed, detail=f"deviations={len(deviations)}")


def test_criterion_7_rank_equals_partner_count(capsys):
    specs = [FamilySpec("all-posets", n=5, n_min=0, labeled=True),
             FamilySpec("chain-products", n=128),
             FamilySpec("random-trees", count=100, seed=7, max_size=512)]

    def work():
        return [run_campaign(s, ["rank-structure"]) for s in specs]

    reps, elapsed = _timed(work)
    total = sum(r.lattices for r in reps)
    ok = all(r.ok and r.counts["rank-structure"]["pass"] == r.lattices for r in reps)
    assert _report(capsys, 7, f"Jacobian rank == |E_a| <= codim on {total} lattices", ok, elapsed)


def _campaign_json(seed):
    spec = FamilySpec("random-trees", count=12, seed=seed, max_size=256)
    return run_campaign(spec, list(ALL_CHECKS)).to_json()


def test_criterion_8_determinism(capsys, tmp_path):
    def work():
        a, b = _campaign_json(11), _campaign_json(11)
        cmd = [sys.executable, "-m", "hibilat", "campaign", "--json", "--random-trees", "12",
               "--seed", "11", "--max-size", "256"]
        runs = []
        for hashseed in ("0", "12345"):
            env = dict(os.environ, PYTHONHASHSEED=hashseed)
            runs.append(subprocess.run(cmd, capture_output=True, env=env, check=False).stdout)
        dots = []
        for _ in range(2):
            L = example_lattice()
            dots.append((lattice_dot(L) + jposet_dot(L) + relations_text(L)).encode())
        export = []
        for hashseed in ("1", "2"):
            out = tmp_path / hashseed
            env = dict(os.environ, PYTHONHASHSEED=hashseed)
            subprocess.run([sys.executable, "-m", "hibilat", "export", str(example_fixture_path()),
                            "--dot", "--out", str(out)], env=env, check=True, capture_output=True)
            export.append((out / "lattice.dot").read_bytes())
        return a, b, runs, dots, export

    (a, b, runs, dots, export), elapsed = _timed(work)
    ok = (a == b and runs[0] == runs[1] and json.loads(runs[0]) == json.loads(a)
          and dots[0] == dots[1] and export[0] == export[1] == dots[0][:len(export[0])])
    assert _report(capsys, 8, "campaign JSON and DOT exports byte-identical across runs "
                              "and hash seeds", ok, elapsed)
