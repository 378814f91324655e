"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed.

Run alone with ``pytest -m acceptance`` or ``python tests/test_acceptance.py``.
"""
import os
import subprocess
import sys
import time
from itertools import permutations

import numpy as np
import pytest

import conftest
from corpus import named_small, quartic_corpus, random_simple
from goodorient.dense import DenseResult, Exceptional, dense_triple, find_exception
from goodorient.generate import (
    circulant,
    complete,
    complete_bipartite,
    identified_cliques,
    k5_minus_2matching,
    random_4r4c,
    random_min_degree,
    random_quartic_4r,
    random_sum,
    wheel,
)
from goodorient.graph import build_graph, format_graph, is_spanning_tree, orient_by_ordering
from goodorient.oracle import brute_branchings, brute_triple, brute_two_trees, is_normal_by_definition
from goodorient.orient import (
    BranchingPair,
    acyclic_branchings,
    check_branchings,
    circuit_triple,
    orient_4r4c,
    orient_quartic,
    validate_triple,
)
from goodorient.quartic import BadCertificate, as_quartic, check_normal, verify_bad_certificate
from goodorient.sparsity import TreePair, is_2T, two_spanning_trees

pytestmark = pytest.mark.acceptance


def report(num, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title} ({detail})"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def ordered_pairs(n, rng, k=10, full_upto=10):
    pairs = list(permutations(range(n), 2))
    if n <= full_upto:
        return pairs
    pick = rng.choice(len(pairs), size=k, replace=False)
    return [pairs[i] for i in sorted(pick)]


# ------------------------------------------------------------------- 1

def test_branching_equivalence():
    rng = np.random.default_rng(1)
    graphs = [g for g in named_small().values() if g.n <= 8]
    graphs += [random_simple(int(rng.integers(3, 9)), 0.6, i) for i in range(40)]
    start = time.perf_counter()
    cases = agree = 0
    while cases < 600:
        g = graphs[cases % len(graphs)]
        order = [int(v) for v in rng.permutation(g.n)]
        d = orient_by_ordering(g, order)
        if cases % 3 == 0:
            s, t = (int(x) for x in rng.choice(g.n, size=2, replace=False))
        else:
            s, t = order[0], order[-1]
        res = acyclic_branchings(d, s, t)
        brute = brute_branchings(d, s, t)
        same = isinstance(res, BranchingPair) == (brute is not None)
        if same and isinstance(res, BranchingPair):
            same = check_branchings(d, s, t, res)
        agree += same
        cases += 1
    took = time.perf_counter() - start
    ok = agree == cases and took < 60
    assert report(1, "branching decision vs enumeration", ok, f"{agree}/{cases} agree, {took:.1f}s")


# ------------------------------------------------------------------- 2

def test_four_regular_four_connected():
    rng = np.random.default_rng(2)
    start = time.perf_counter()
    graphs = [complete(5)] + [circulant(n) for n in range(5, 31)]
    graphs += [random_4r4c(int(rng.integers(6, 31)), seed) for seed in range(100)]
    calls = fails = 0
    for g in graphs:
        for s, t in ordered_pairs(g.n, rng):
            calls += 1
            try:
                fails += not validate_triple(g, orient_4r4c(g, s, t))
            except Exception:
                fails += 1
    took = time.perf_counter() - start
    ok = fails == 0 and took < 300
    assert report(2, "4-regular 4-connected triples", ok,
                  f"{len(graphs)} graphs, {calls} pairs, {fails} failures, {took:.1f}s")


# ------------------------------------------------------------------- 3

def test_generic_circuits_all_pairs():
    circuits = {"K4": complete(4), "K34": complete_bipartite(3, 4)}
    circuits.update({f"W{k}": wheel(k) for k in range(4, 9)})
    calls = fails = 0
    for name, g in circuits.items():
        for s, t in permutations(g.vertices, 2):
            calls += 1
            fails += not validate_triple(g, circuit_triple(g, s, t))
            if name not in ("K4", "W4"):
                continue
            for e, u, v in g.edges:
                if not {u, v} & {s, t}:
                    continue
                for kind in ("I", "O"):
                    calls += 1
                    tr = circuit_triple(g, s, t, (e, kind))
                    fails += not (validate_triple(g, tr) and e in (tr.I if kind == "I" else tr.O))
    assert report(3, "generic circuits, all pairs and constraints", fails == 0, f"{calls} calls, {fails} failures")


# ------------------------------------------------------------------- 4

def test_normality_vs_oracle():
    corpus = quartic_corpus()
    mismatches = bad_certs = negatives = 0
    for _, g in corpus:
        res = check_normal(as_quartic(g))
        if isinstance(res, BadCertificate):
            negatives += 1
            bad_certs += not verify_bad_certificate(g, res)
        mismatches += isinstance(res, BadCertificate) == is_normal_by_definition(g)
    ok = len(corpus) >= 50 and mismatches == 0 and bad_certs == 0
    assert report(4, "normality vs subquartic enumeration", ok,
                  f"{len(corpus)} quartics, {negatives} not normal, {mismatches} mismatches, "
                  f"{bad_certs} invalid certificates")


# ------------------------------------------------------------------- 5

def test_exceptional_graph():
    g = identified_cliques(7)
    with_triple = [(s, t) for s, t in permutations(g.vertices, 2) if brute_triple(g, s, t) is not None]
    flagged = [isinstance(dense_triple(h, 0, h.n - 1), Exceptional)
               for h in (identified_cliques(7), identified_cliques(9))]
    ok = not with_triple and all(flagged)
    detail = f"{len(with_triple)} of 42 pairs admit a triple; exceptional flags {flagged}"
    assert report(5, "two cliques sharing a vertex", ok, detail)


# ------------------------------------------------------------------- 6

def test_two_trees_vs_enumeration():
    graphs = [g for g in named_small().values() if g.n <= 12]
    graphs += [g for _, g in quartic_corpus() if g.n <= 12]
    graphs += [random_simple(int(n), 0.5, i) for i, n in enumerate(np.random.default_rng(6).integers(3, 9, 40))]
    graphs += [build_graph(4, [(0, 1), (0, 1), (2, 3), (2, 3)])]
    mismatches = bad = certs = 0
    for g in graphs:
        res = two_spanning_trees(g)
        brute = brute_two_trees(g)
        mismatches += isinstance(res, TreePair) != (brute is not None)
        if isinstance(res, TreePair):
            trees_ok = is_spanning_tree(g, res.tree_I) and is_spanning_tree(g, res.tree_O)
            bad += bool(res.tree_I & res.tree_O) or not trees_ok
        else:
            certs += 1
            where = {v: i for i, b in enumerate(res.partition.blocks) for v in b}
            crossing = sum(1 for _, u, v in g.edges if where[u] != where[v])
            bad += not (crossing == res.crossing and crossing < 2 * (len(res.partition) - 1))
    ok = mismatches == 0 and bad == 0
    assert report(6, "two spanning trees vs enumeration", ok,
                  f"{len(graphs)} graphs, {certs} certificates, {mismatches} mismatches, {bad} invalid outputs")


# ------------------------------------------------------------------- 7

def test_iterated_sums():
    pool = [complete(4), k5_minus_2matching(), complete_bipartite(3, 4)]
    seed = 0
    while len(pool) < 6:
        q = random_quartic_4r(8 + seed % 3, seed)
        if q is not None and not isinstance(check_normal(as_quartic(q)), BadCertificate):
            pool.append(q)
        seed += 1
    rng = np.random.default_rng(7)
    calls = fails = 0
    for _ in range(50):
        g = random_sum(rng, pool, 3)
        q = as_quartic(g)
        for s, t in permutations(sorted(q.transits), 2):
            calls += 1
            res = orient_quartic(q, s, t)
            fails += isinstance(res, BadCertificate) or not validate_triple(g, res)
    assert report(7, "iterated sums of excellent quartics", fails == 0, f"50 sums, {calls} pairs, {fails} failures")


# ------------------------------------------------------------------- 8

def test_dense_graphs():
    rng = np.random.default_rng(8)
    calls = fails = skipped = 0
    for n in range(8, 13):
        for seed in range(100):
            g = random_min_degree(n, 1000 * n + seed)
            if find_exception(g) is not None:
                skipped += 1
                continue
            for s, t in ordered_pairs(n, rng, k=5, full_upto=0):
                calls += 1
                try:
                    res = dense_triple(g, s, t)
                    ok = (isinstance(res, DenseResult) and is_2T(res.subgraph)
                          and res.subgraph.vertex_set == g.vertex_set
                          and validate_triple(res.subgraph, res.triple))
                except Exception:
                    ok = False
                fails += not ok
    assert report(8, "dense graphs", fails == 0, f"{calls} queries, {fails} failures, {skipped} exceptional skipped")


# ------------------------------------------------------------------- 9

def test_cli_determinism(tmp_path):
    graphs = {
        "k5": complete(5), "c12": circulant(12), "w4": k5_minus_2matching(),
        "sum": random_sum(np.random.default_rng(3), [complete(4), k5_minus_2matching()], 2),
        "dense": random_min_degree(11, 9), "ic7": identified_cliques(7), "k4": complete(4),
        "path": build_graph(3, [(0, 1), (1, 2)]),
    }
    paths = {}
    for name, g in graphs.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(format_graph(g))
        paths[name] = str(p)
    first = sorted(as_quartic(graphs["sum"]).transits)
    triple_file = tmp_path / "t.json"
    runs = [
        ["check2t", paths["k4"]], ["check2t", paths["path"]], ["circuits", paths["sum"]],
        ["normal", paths["sum"]], ["orient", paths["sum"], "--s", str(first[0]), "--t", str(first[2])],
        ["orient4r4c", paths["c12"], "--s", "0", "--t", "5"], ["dense", paths["dense"], "--s", "1", "--t", "4"],
        ["dense", paths["ic7"], "--s", "0", "--t", "6"], ["gen", "random_4r4c", "14", "--seed", "8"],
        ["gen", "random_min_degree", "10", "--seed", "2"], ["oracle", "triple", paths["w4"], "--s", "1", "--t", "2"],
        ["oracle", "subquartics", paths["sum"]], ["oracle", "trees", paths["k4"]],
        ["explore-transits", paths["w4"]],
    ]
    env = dict(os.environ)
    outputs = []
    differing = []
    for argv in runs:
        got = []
        for hashseed in ("0", "4242"):
            env["PYTHONHASHSEED"] = hashseed
            res = subprocess.run([sys.executable, "-m", "goodorient", *argv], env=env,
                                 capture_output=True, timeout=300)
            got.append((res.returncode, res.stdout, res.stderr))
        if got[0] != got[1]:
            differing.append(argv[0])
        outputs.append(got[0])
    triple_file.write_bytes(outputs[5][1])
    env["PYTHONHASHSEED"] = "0"
    verify = [subprocess.run([sys.executable, "-m", "goodorient", "verify", paths["c12"], str(triple_file)],
                             env=env, capture_output=True, timeout=300).stdout for _ in range(2)]
    if verify[0] != verify[1]:
        differing.append("verify")
    ok = not differing
    assert report(9, "byte-identical reruns", ok, f"{len(runs) + 1} commands, differing: {differing or 'none'}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
