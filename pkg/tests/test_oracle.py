import json
from itertools import islice, permutations

import numpy as np
import pytest

from corpus import PLANT_A, PLANT_B, PLANT_C, PLANT_D, planted_k12
from htcolor.certificate import CertificatePair, HtCopy
from htcolor.coloring import edge_index, generate_greedy_random, generate_rainbow, generate_round_robin
from htcolor.errors import StructuralError
from htcolor.oracle import (_search_generic, color_isomorphic, count_c6, enumerate_ht_copies,
                            find_disjoint_color_iso_pair, verify_certificate)

ROUND_ROBIN_K12_T3 = "absent"  # frozen from the first exhaustive run (55,440 cycles)


def cycle_edge_set(copy):
    return frozenset(frozenset(e) for e in copy.edges())


def test_k6_cycle_count():
    copies = list(enumerate_ht_copies(generate_round_robin(6), 3))
    assert len(copies) == 60 == count_c6(6)
    # independent count: Hamilton cycles as edge sets from vertex orderings starting at 0
    ham = {frozenset(frozenset((p[k], p[(k + 1) % 6])) for k in range(6))
           for p in ((0,) + q for q in permutations(range(1, 6)))}
    assert {cycle_edge_set(c) for c in copies} == ham


def test_enumeration_needs_six_vertices():
    with pytest.raises(ValueError):
        list(enumerate_ht_copies(generate_greedy_random(5, 5, 0), 3))
    with pytest.raises(ValueError):
        find_disjoint_color_iso_pair(generate_round_robin(10), 3)


def test_t4_invariant_sweep():
    col = generate_round_robin(10)
    seen = 0
    for c in enumerate_ht_copies(col, 4, limit=2000):
        vs = c.vertices()
        assert len(vs) == 10 == len(set(vs))
        assert list(c.branch) == sorted(c.branch) and len(c.edges()) == 12
        seen += 1
    print(f"t=4, n=10: {seen} copies under limit 2000")
    assert seen == 2000


def test_identity_isomorphism():
    col = generate_round_robin(12)
    c = next(enumerate_ht_copies(col, 3))
    phi = color_isomorphic(col, c, c)
    assert phi == {v: v for v in c.vertices()}


def test_rainbow_disjoint_copies_not_isomorphic():
    col = generate_rainbow(12)
    c1 = HtCopy(PLANT_A, PLANT_C)
    c2 = HtCopy(PLANT_B, PLANT_D)
    assert color_isomorphic(col, c1, c2) is None


def test_planted_rotation_found():
    col = planted_k12(rotate=1)
    c1, c2 = HtCopy(PLANT_A, PLANT_C), HtCopy(PLANT_B, PLANT_D)
    phi = color_isomorphic(col, c1, c2)
    assert phi is not None
    assert phi != dict(zip(c1.vertices(), c2.vertices()))  # only a rotation works
    cm = col.color_matrix
    assert all(cm[p, q] == cm[phi[p], phi[q]] for p, q in c1.edges())


def test_isomorphism_symmetric():
    col = generate_greedy_random(10, 9, 4)
    copies = list(islice(enumerate_ht_copies(col, 3), 0, 3000, 7))
    rng = np.random.default_rng(0)
    hits = 0
    for _ in range(600):
        a, b = (copies[k] for k in rng.integers(len(copies), size=2))
        f, g = color_isomorphic(col, a, b), color_isomorphic(col, b, a)
        assert (f is None) == (g is None)
        if f is not None:
            hits += 1
            inv = {y: x for x, y in f.items()}
            cm = col.color_matrix
            assert all(cm[p, q] == cm[inv[p], inv[q]] for p, q in b.edges())
    assert hits > 0


def test_t4_isomorphism_by_branch_permutation():
    col = generate_round_robin(10)
    c = HtCopy((0, 1, 2, 3), {(0, 1): 4, (0, 2): 5, (0, 3): 6, (1, 2): 7, (1, 3): 8, (2, 3): 9})
    assert color_isomorphic(col, c, c) == {v: v for v in c.vertices()}


def test_rainbow_absent():
    res = find_disjoint_color_iso_pair(generate_rainbow(12), 3)
    assert res.absent and res.exhaustive and res.examined == count_c6(12)


@pytest.mark.parametrize("rotate", [0, 1, 2])
def test_planted_pair_recovered(rotate):
    col = planted_k12(rotate)
    res = find_disjoint_color_iso_pair(col, 3)
    assert res.outcome == "found"
    cert = res.certificate
    assert verify_certificate(col, cert).ok
    got = {cycle_edge_set(cert.copy1), cycle_edge_set(cert.copy2)}
    assert got == {cycle_edge_set(HtCopy(PLANT_A, PLANT_C)), cycle_edge_set(HtCopy(PLANT_B, PLANT_D))}


def test_round_robin_k12_regression():
    res = find_disjoint_color_iso_pair(generate_round_robin(12), 3)
    assert res.exhaustive and res.outcome == ROUND_ROBIN_K12_T3


@pytest.mark.parametrize("n,colors,seed", [(12, 11, 0), (12, 14, 1), (12, 11, 2)])
def test_compiled_search_agrees_with_generic(n, colors, seed):
    col = generate_greedy_random(n, colors, seed)
    fast = find_disjoint_color_iso_pair(col, 3)
    cert, complete, examined = _search_generic(col, 3, None)
    assert fast.exhaustive and complete
    assert (fast.certificate is None) == (cert is None)
    if cert is not None:
        assert verify_certificate(col, cert).ok


def test_budget_gives_inconclusive():
    res = find_disjoint_color_iso_pair(generate_rainbow(14), 3, budget=1000)
    assert res.outcome == "inconclusive" and not res.absent and res.examined == 1000


def test_t4_budgeted_search():
    res = find_disjoint_color_iso_pair(generate_rainbow(20), 4, budget=500)
    assert res.outcome == "inconclusive"


def good_cert():
    col = planted_k12()
    return col, find_disjoint_color_iso_pair(col, 3).certificate.to_dict()


def test_verify_shared_vertex():
    col, d = good_cert()
    d = json.loads(json.dumps(d))
    d["copy2"]["subdiv"]["0,1"] = d["copy1"]["subdiv"]["0,1"]
    rep = verify_certificate(col, d)
    assert not rep.ok and any("share" in v for v in rep.violations)


def test_verify_recolored_edge():
    col, d = good_cert()
    c1 = HtCopy.from_dict(d["copy1"])
    p, q = c1.edges()[0]
    recolored = col.with_edge_color(edge_index(p, q, col.n), col.num_colors)
    rep = verify_certificate(recolored, d)
    assert not rep.ok and any("color" in v for v in rep.violations)


def test_verify_malformed():
    col, d = good_cert()
    with pytest.raises(StructuralError):
        verify_certificate(col, {"t": 3, "copy1": d["copy1"]})
    with pytest.raises(StructuralError):
        verify_certificate(col, {**d, "copy2": {"branch": [1, 2, 3], "subdiv": {"a": 1}}})


def test_verify_out_of_range_and_wrong_slots():
    col, d = good_cert()
    bad = json.loads(json.dumps(d))
    bad["copy1"]["branch"][0] = 99
    assert not verify_certificate(col, bad).ok
    bad = json.loads(json.dumps(d))
    del bad["copy2"]["subdiv"]["0,2"]
    with pytest.raises(StructuralError):
        verify_certificate(col, bad)


def test_certificate_json_roundtrip():
    col, d = good_cert()
    back = CertificatePair.from_dict(json.loads(json.dumps(d)))
    assert back.to_dict() == d
    assert sorted(d) == ["colors_checked", "copy1", "copy2", "t"]


def test_oracle_certificates_on_greedy_k14():
    for s in range(3):
        col = generate_greedy_random(14, 13, s)
        res = find_disjoint_color_iso_pair(col, 3)
        assert res.exhaustive
        if res.certificate is not None:
            assert verify_certificate(col, res.certificate).ok
            v1, v2 = set(res.certificate.copy1.vertices()), set(res.certificate.copy2.vertices())
            assert not v1 & v2 and len(v1) == len(v2) == 6
