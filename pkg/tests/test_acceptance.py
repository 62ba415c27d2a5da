"""The ten acceptance criteria, each at its stated tolerance and time limit.

Every test records a one-line PASS/FAIL verdict; the lines are printed in the
terminal summary (see conftest.py).
"""
import time
from fractions import Fraction

import numpy as np
import pytest

from corpus import aux_graphs, colorings, planted_k12
from htcolor.auxgraph import AuxGraph, build_aux, check_unique_shared_neighbor
from htcolor.coloring import (chromatic_index, edge_endpoints, generate_greedy_random, generate_rainbow,
                              generate_round_robin, num_edges, sum_pairs_per_color, validate)
from htcolor.embed import PipelineParams, lemma24_check, turan_light_audit
from htcolor.errors import TooSparseError
from htcolor.matchings import (count_cross_matchings, cross_matching_samples, exact_expectation,
                               sample_equipartition)
from htcolor.oracle import find_disjoint_color_iso_pair, verify_certificate
from htcolor.pipeline import run_pipeline
from htcolor.regularize import almost_regular_balanced_subgraph, pipeline_constants


@pytest.fixture
def verdict(request):
    lines = request.config.acceptance_lines

    def record(k, ok, detail, seconds=None, limit=None):
        timing = ""
        if seconds is not None:
            timing = f" [{seconds:.1f} s" + (f" / limit {limit} s]" if limit else "]")
            ok = ok and (limit is None or seconds < limit)
        lines.append(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}{timing}")
        assert ok, detail

    return record


def incidence_share(n):
    """E x E boolean: edges share an endpoint (diagonal cleared)."""
    u, v = edge_endpoints(n)
    inc = np.zeros((num_edges(n), n), dtype=np.int32)
    inc[np.arange(len(u)), u] = 1
    inc[np.arange(len(v)), v] = 1
    share = (inc @ inc.T) > 0
    np.fill_diagonal(share, False)
    return share


def test_1_properness_and_generators(verdict):
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    instances = mutations = disagreements = improper = 0
    shares = {}
    for label, col in colorings(4, 32):
        instances += 1
        improper += not validate(col).ok
        share = shares.setdefault(col.n, np.triu(incidence_share(col.n)))
        for _ in range(100):
            e = int(rng.integers(num_edges(col.n)))
            mutated = col.with_edge_color(e, int(rng.integers(col.num_colors)))
            c = mutated.edge_color
            scan = [tuple(p) for p in np.argwhere(share & (c[:, None] == c[None, :])).tolist()]
            rep = validate(mutated)
            disagreements += rep.violations != scan or rep.ok != (not scan)
            mutations += 1
    ok = improper == 0 and disagreements == 0
    verdict(1, ok, f"{instances} generated colorings n=4..32, {improper} improper; "
                   f"{mutations} mutations, {disagreements} disagreements with the quadratic scan",
            time.perf_counter() - t0, 10)


def test_2_expectation_direction(verdict):
    t0 = time.perf_counter()
    col = generate_round_robin(8)
    assert sum_pairs_per_color(col) == 42
    xs = cross_matching_samples(col, 100_000, seed=2)
    mean, se = xs.mean(), xs.std(ddof=1) / np.sqrt(len(xs))
    exact = exact_expectation(col)
    a = mean >= 42 / 256 - 3 * se
    b = abs(mean - float(exact)) <= 2 * se
    verdict(2, a and b, f"MC mean {mean:.4f} (se {se:.4f}); (a) >= 42/256 - 3se: {a}; "
                        f"(b) within 2se of exact {exact}: {b}", time.perf_counter() - t0, 30)


def test_3_aux_exactness(verdict):
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    bad = 0
    for i in range(50):
        n = int(rng.integers(4, 17))
        C = int(rng.integers(chromatic_index(n), 2 * n + 1))
        col = generate_greedy_random(n, C, int(rng.integers(2**31)))
        part = sample_equipartition(n, int(rng.integers(2**31)))
        bad += build_aux(col, part).num_edges != count_cross_matchings(col, part)
    verdict(3, bad == 0, f"50 instances n<=16, {bad} mismatches", time.perf_counter() - t0, 20)


def test_4_unique_shared_neighbor(verdict):
    graphs = list(aux_graphs(2, 32))
    for s in range(10):
        col = generate_greedy_random(48, 47 + s, s)
        graphs.append((f"greedy-48-{s}", build_aux(col, sample_equipartition(48, s))))
    failures = [label for label, aux in graphs if check_unique_shared_neighbor(aux) is not None]
    fixture = AuxGraph.from_pair_edges([((0, 1), (4, 5)), ((0, 1), (5, 6))])
    caught = check_unique_shared_neighbor(fixture) is not None
    verdict(4, not failures and caught,
            f"{len(graphs)} aux graphs from proper colorings, {len(failures)} violations; "
            f"injected duplicate caught: {caught}")


def regularized_instances(count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(16, 49))
        C = int(rng.integers(chromatic_index(n), 2 * n + 1))
        col = generate_greedy_random(n, C, int(rng.integers(2**31)))
        yield build_aux(col, sample_equipartition(n, int(rng.integers(2**31))))


def test_5_regularization_invariants(verdict):
    outputs = sparse = bad = 0
    worst = Fraction(1)
    for aux in regularized_instances(100, 5):
        try:
            g0 = almost_regular_balanced_subgraph(aux)
        except TooSparseError:
            sparse += 1
            continue
        outputs += 1
        worst = max(worst, g0.big_k)
        A, B = len(g0.adj_a), g0.m
        bad += not (Fraction(B, 2) <= A <= 2 * B and g0.max_degree <= g0.big_k * g0.delta)
    verdict(5, bad == 0 and outputs > 0,
            f"100 aux inputs: {outputs} outputs, {sparse} too-sparse, {bad} invariant failures, max bigK {worst}")


def random_bipartite_aux(rng):
    na, nb = (int(x) for x in rng.integers(6, 40, size=2))
    p = rng.uniform(0.1, 0.9)
    return AuxGraph.from_pair_edges([((2 * a, 2 * a + 1), (500 + 2 * b, 501 + 2 * b))
                                     for a in range(na) for b in range(nb) if rng.random() < p])


def test_6_codegree_sum_bound(verdict):
    t0 = time.perf_counter()
    rng = np.random.default_rng(6)
    derived = []  # G_0 of pipeline instances; small n rarely has delta|U| >= 2m, so go larger
    for n in (64, 96, 128, 160):
        for s in range(4):
            col = generate_greedy_random(n, n - 1 + s * n // 4, s)
            try:
                derived.append(almost_regular_balanced_subgraph(build_aux(col, sample_equipartition(n, s))))
            except TooSparseError:
                pass
    derived = [g for g in derived if g.delta * len(g.side_a) >= 2 * g.m]
    synthetic = []
    while len(synthetic) < 200:
        aux = random_bipartite_aux(rng)
        if aux.num_edges:
            try:
                synthetic.append(almost_regular_balanced_subgraph(aux))
            except TooSparseError:
                pass
    samples = failures = from_col_samples = 0
    attempts = 0
    while samples < 1000 and attempts < 10**6:
        attempts += 1
        use_derived = derived and rng.random() < 0.5
        pool = derived if use_derived else synthetic
        g = pool[int(rng.integers(len(pool)))]
        A = g.side_a
        need = -(-2 * g.m // g.delta)
        if need > len(A):
            continue
        size = int(rng.integers(max(need, 2), len(A) + 1))
        U = [A[i] for i in rng.choice(len(A), size=size, replace=False)]
        rep = lemma24_check(g, U)
        assert rep.precondition
        failures += not rep.passed
        samples += 1
        from_col_samples += bool(use_derived)
    verdict(6, samples >= 1000 and failures == 0,
            f"{samples} samples with delta|U| >= 2m ({from_col_samples} on coloring-derived G_0), "
            f"{failures} failures", time.perf_counter() - t0, 60)


def test_7_turan_step_stated_bound(verdict):
    audited = failures = turan_failures = 0
    instances = 0
    for aux in list(regularized_instances(60, 7)) + [
            build_aux(c, sample_equipartition(c.n, 0)) for c in
            (generate_greedy_random(n, n - 1, n) for n in (48, 56, 64))]:
        try:
            g0 = almost_regular_balanced_subgraph(aux)
        except TooSparseError:
            continue
        instances += 1
        for t in (3, 4):
            for e in turan_light_audit(g0, g0.side_a, PipelineParams(t=t)).entries:
                if e.status == "kt_free":
                    audited += 1
                    failures += not e.meets_stated
                    turan_failures += not e.meets_turan
    verdict(7, failures == 0,
            f"{instances} G_0 instances, t=3,4: {audited} audited neighborhoods, "
            f"{failures} below C(h,2)/(t-1), {turan_failures} below the Turan bound")


def test_8_end_to_end_soundness(verdict):
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    runs = wins = unsound = 0
    for _ in range(200):
        n = int(rng.integers(24, 65))
        C = int(rng.integers(n - 1 + n % 2, 2 * n + 1))
        seed = int(rng.integers(2**31))
        col = generate_greedy_random(n, C, seed)
        out = run_pipeline(col, PipelineParams(t=3, seed=seed))
        runs += 1
        if out.status == "verify-failed":
            unsound += 1
        elif out.success:
            wins += 1
            unsound += not verify_certificate(col, out.certificate.to_dict()).ok
    verdict(8, unsound == 0 and runs >= 200,
            f"{runs} runs, {wins} certificates, {unsound} rejected by the verifier",
            time.perf_counter() - t0, 300)


def test_9_oracle_agreement(verdict):
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    contradictions = absent = found = wins = oracle_bad = 0
    for n in (12, 14, 16):
        for _ in range(20):
            C = int(rng.integers(n - 1, 2 * n + 1))
            seed = int(rng.integers(2**31))
            col = generate_greedy_random(n, C, seed)
            res = find_disjoint_color_iso_pair(col, 3)
            assert res.exhaustive
            out = run_pipeline(col, PipelineParams(t=3, seed=seed))
            wins += out.success
            if res.absent:
                absent += 1
                contradictions += out.success
            else:
                found += 1
                oracle_bad += not verify_certificate(col, res.certificate).ok
    planted = all(find_disjoint_color_iso_pair(planted_k12(r), 3).outcome == "found" for r in range(6))
    rainbow = all(find_disjoint_color_iso_pair(generate_rainbow(n), 3).absent for n in (12, 14, 16))
    ok = contradictions == 0 and oracle_bad == 0 and planted and rainbow
    verdict(9, ok, f"60 greedy colorings: oracle found {found}, proved absent {absent}; pipeline "
                   f"certificates {wins}, contradictions {contradictions}; planted recovered: {planted}; "
                   f"rainbow absent: {rainbow}", time.perf_counter() - t0, 600)


def test_10_constant_substitution(verdict):
    c3 = pipeline_constants(3, Fraction(1, 1024))
    c4 = pipeline_constants(4, Fraction(1, 1024))
    ok = c3.alpha == Fraction(1, 3) and c3.paper_k == 61440 and c4.alpha == Fraction(2, 5)
    verdict(10, ok, f"t=3: alpha={c3.alpha}, K={c3.paper_k}; t=4: alpha={c4.alpha}")
