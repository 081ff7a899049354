import random
from itertools import permutations

import networkx as nx
import numpy as np
import pytest

from dalpha import (SizeCap, build_catalog, build_digraph, canonical_key, directed_cycle,
                    enumerate_sc, transitive_tournament, complete_digraph)
from dalpha.digraph import Digraph
from dalpha.enumeration import (classify_shard, enumeration_cap, merge_counts, orbit,
                                shard_bounds, strongly_connected_filter)
from dalpha.verify import extremal_scan
from oracles import sc_count_matrix_power, to_nx
from strategies import digraphs
from hypothesis import given, settings


def nx_labeled_count(n):
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    total = 0
    for mask in range(1 << len(pairs)):
        h = nx.DiGraph()
        h.add_nodes_from(range(n))
        h.add_edges_from(p for b, p in enumerate(pairs) if mask >> b & 1)
        total += nx.is_strongly_connected(h)
    return total


def nx_class_count(graphs):
    reps = []
    for g in graphs:
        h = to_nx(g)
        if not any(nx.is_isomorphic(h, r) for r in reps):
            reps.append(h)
    return len(reps)


@pytest.mark.parametrize("n, expected", [(2, 1), (3, 18), (4, 1606)])
def test_labeled_counts_against_networkx(n, expected):
    got = list(enumerate_sc(n))
    assert len(got) == expected == nx_labeled_count(n)
    masks = [g.mask for g in got]
    assert masks == sorted(set(masks))


def test_digon_is_the_only_two_vertex_digraph():
    assert list(enumerate_sc(2)) == [complete_digraph(2)]


def test_n5_count_against_matrix_power_recount():
    assert build_catalog(5).labeled_total == sc_count_matrix_power(5) == 565080


@pytest.mark.parametrize("n", [3, 4])
def test_class_counts_against_networkx_isomorphism(n):
    cat = build_catalog(n)
    assert cat.size == nx_class_count(enumerate_sc(n))


def test_known_class_counts():
    # unlabeled strongly connected digraphs: 1, 5, 83, 5048
    assert [build_catalog(n).size for n in (2, 3, 4, 5)] == [1, 5, 83, 5048]


def test_orbit_sizes_sum_to_labeled_count():
    cat = build_catalog(4)
    assert sum(orbit(4, int(k)).size for k in cat.keys) == 1606
    assert (cat.counts == [orbit(4, int(k)).size for k in cat.keys]).all()


@settings(max_examples=200, deadline=None)
@given(digraphs(min_n=1, max_n=6))
def test_filter_matches_networkx(g):
    want = g.n == 1 or nx.is_strongly_connected(to_nx(g))
    if g.n >= 2:
        assert bool(strongly_connected_filter(g.n, np.array([g.mask]))[0]) == want


def test_canonical_key_relabeling_invariance_seeded():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(2, 7)
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        g = build_digraph(n, [p for p in pairs if rng.random() < 0.4])
        perm = list(range(n))
        rng.shuffle(perm)
        assert canonical_key(g) == canonical_key(g.relabel(perm))


def test_canonical_key_is_orbit_minimum_by_brute_force():
    g = build_digraph(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 2)])
    brute = min(g.relabel(p).mask for p in permutations(range(4)))
    assert canonical_key(g) == brute


def test_cycle_and_reverse_share_a_key():
    c3 = directed_cycle(3)
    assert canonical_key(c3) == canonical_key(c3.reverse())
    assert canonical_key(c3) != canonical_key(transitive_tournament(3))


def test_keys_separate_non_isomorphic():
    cat = build_catalog(4)
    assert len(set(cat.keys.tolist())) == cat.size
    for key in cat.keys[:20]:
        assert canonical_key(Digraph.from_mask(4, int(key))) == key


def test_canonical_key_size_cap():
    with pytest.raises(SizeCap):
        canonical_key(directed_cycle(9))


def test_shard_bounds_cover_interval():
    b = shard_bounds(4, 7)
    assert b[0][0] == 0 and b[-1][1] == 4096
    assert all(x[1] == y[0] for x, y in zip(b, b[1:]))


def test_sharded_classification_is_independent():
    one = merge_counts([classify_shard(4, 0, 4096)])
    parts = [classify_shard(4, lo, hi) for lo, hi in shard_bounds(4, 8)]
    assert merge_counts(parts) == one
    assert merge_counts(reversed(parts)) == one


def test_catalog_and_reports_shard_independent():
    a, b = build_catalog(5, shards=1), build_catalog(5, shards=8, workers=2)
    assert (a.keys == b.keys).all() and (a.counts == b.counts).all()
    for sel in ("all", "dichromatic(2)", "vertex_conn(1)"):
        ra = extremal_scan(5, 0.3, sel, catalog=a)
        rb = extremal_scan(5, 0.3, sel, catalog=b)
        assert ra == rb


def test_size_caps(monkeypatch):
    monkeypatch.delenv("DALPHA_MAX_N", raising=False)
    with pytest.raises(SizeCap):
        list(enumerate_sc(6))
    with pytest.raises(SizeCap):
        list(enumerate_sc(1))
    assert enumeration_cap(allow_n6=True) == 6
    with pytest.raises(SizeCap):
        list(enumerate_sc(7, allow_n6=True))


def test_env_override(monkeypatch):
    monkeypatch.setenv("DALPHA_MAX_N", "4")
    with pytest.raises(SizeCap):
        list(enumerate_sc(5))
    monkeypatch.setenv("DALPHA_MAX_N", "6")
    assert enumeration_cap() == 6
    monkeypatch.setenv("DALPHA_MAX_N", "7")
    with pytest.raises(SizeCap):
        enumeration_cap()
    monkeypatch.setenv("DALPHA_MAX_N", "lots")
    with pytest.raises(SizeCap):
        enumeration_cap()


def test_n6_enumeration_over_a_shard(monkeypatch):
    monkeypatch.delenv("DALPHA_MAX_N", raising=False)
    hi = 1 << 30
    lo = hi - (1 << 12)
    got = [g.mask for g in enumerate_sc(6, lo, hi, allow_n6=True)]
    want = [m for m in range(lo, hi) if nx.is_strongly_connected(to_nx(Digraph.from_mask(6, m)))]
    assert got == want and 0 < len(want) < hi - lo
