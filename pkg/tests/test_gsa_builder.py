import itertools

import numpy as np
import pytest

from gsacms.alphabet import encode_document, encode_reference
from gsacms.gsa_builder import (
    TYPE_L, TYPE_S, TYPE_S_STAR, Collection, bucket_sstar, build_ecms, build_gsa,
    build_metastring, compute_type_array, induce_gsa, sort_insert_heads, sort_sstar_buckets,
)
from gsacms.oracles import naive_gsa, naive_types
from gsacms.suffix_kernels import build_suffix_array_bytes
from gsacms.suffix_order import compare_iterative
from gsacms.synth import mutated_copies, random_text

from . import worked_example as ex

CODE = {TYPE_L: "L", TYPE_S: "S", TYPE_S_STAR: "S*"}


def types_of(s):
    return [CODE[int(t)] for t in compute_type_array(encode_document(s))]


@pytest.mark.parametrize("s, want", [
    ("CAB", ["L", "S*", "L", "S"]),
    ("AAA", ["L", "L", "L", "S"]),
    ("", ["S"]),
])
def test_type_array_examples(s, want):
    assert types_of(s) == want


def test_type_array_random(backend):
    rng = np.random.default_rng(4)
    for _ in range(100):
        s = random_text(int(rng.integers(0, 40)), "ACG", rng)
        assert types_of(s) == naive_types(encode_document(s))


@pytest.fixture
def ex_build():
    col, ref, store, _ = build_ecms([ex.S], ex.R)
    return col, ref, store


def test_golden_buckets(ex_build):
    col, ref, store = ex_build
    buckets = bucket_sstar(store, ref, col)
    assert buckets == {ip: [(0, p) for p in ps] for ip, ps in ex.BUCKETS.items()}
    col, ref, store, _ = build_ecms(["AAA"])
    assert bucket_sstar(store, ref, col) == {}


def test_identical_docs_pair_up_in_buckets():
    col, ref, store, _ = build_ecms(["ACGTTGCA", "ACGTTGCA"])
    for members in bucket_sstar(store, ref, col).values():
        assert members[::2] == [(0, p) for _, p in members[1::2]]
        assert members[1::2] == [(1, p) for _, p in members[::2]]


def test_golden_head_ranks(ex_build):
    _, _, store = ex_build
    ranks = sort_insert_heads(store)
    got = {int(j): ranks.rank_of(0, h) for h, j in enumerate(store.docs[0].j)}
    assert got == ex.HEAD_RANK


def test_single_terminator_head():
    _, _, store, _ = build_ecms([""], "A")
    assert sort_insert_heads(store).rank.tolist() == [0]


def test_duplicate_doc_head_ranks():
    _, _, store, _ = build_ecms([ex.S, ex.S], ex.R)
    ranks = sort_insert_heads(store)
    n = len(store.docs[0])
    assert (ranks.rank[n:] == ranks.rank[:n] + 1).all()


def test_golden_sstar_order(ex_build):
    col, ref, store = ex_build
    ranks = sort_insert_heads(store)
    out = sort_sstar_buckets(store, ref, ranks, bucket_sstar(store, ref, col))
    assert out == [(0, p) for p in ex.SSTAR_SORTED]
    assert sort_sstar_buckets(store, ref, ranks, {}) == []


@pytest.mark.parametrize("docs, sstar, want", [
    ([ex.S], [(0, p) for p in ex.SSTAR_SORTED], [(0, p) for p in ex.GSA]),
    (["AB", "AB"], [], [(0, 2), (1, 2), (0, 0), (1, 0), (0, 1), (1, 1)]),
    ([""], [], [(0, 0)]),
])
def test_induce_examples(backend, docs, sstar, want):
    assert induce_gsa(Collection.from_sequences(docs), sstar).tolist() == [list(p) for p in want]


def test_metastring_invariants():
    rng = np.random.default_rng(2)
    seed = random_text(200, rng=rng)
    col, ref, store, _ = build_ecms(mutated_copies(seed, 4, 0.03, rng=rng), seed)
    meta = build_metastring(store)
    m = col.m
    sentinels = np.flatnonzero(meta.symbols < m)
    assert meta.symbols[sentinels].tolist() == list(range(m))
    assert len(meta.symbols) == store.chi_prime + m
    # equal metacharacter <=> equal matched factor plus mismatch symbol
    subs = {}
    k = 0
    for d, heads in enumerate(store.docs):
        doc = col.docs[d].tobytes()
        for j, ell in zip(heads.j.tolist(), heads.ell.tolist()):
            sym = int(meta.symbols[meta.head_positions[k]])
            subs.setdefault(sym, set()).add(doc[j:j + ell + 1])
            k += 1
    assert all(len(v) == 1 for v in subs.values())
    assert len({next(iter(v)) for v in subs.values()}) == len(subs)


def test_head_ranks_agree_with_iterative_comparison():
    rng = np.random.default_rng(6)
    for _ in range(10):
        seed = random_text(int(rng.integers(5, 80)), rng=rng)
        col, ref, store, _ = build_ecms(mutated_copies(seed, 3, 0.05, rng=rng))
        ranks = sort_insert_heads(store)
        heads = [(d, h, int(j)) for d, hs in enumerate(store.docs) for h, j in enumerate(hs.j)]
        for (da, ha, ja), (db, hb, jb) in itertools.combinations(heads, 2):
            want = compare_iterative(store, ref, (da, ja), (db, jb))
            assert np.sign(ranks.rank_of(da, ha) - ranks.rank_of(db, hb)) == want


def test_build_gsa_golden(backend):
    res = build_gsa([ex.S], ex.R)
    assert res.gsa.tolist() == [[0, p] for p in ex.GSA]
    st = res.stats
    assert (st.N, st.m, st.chi, st.chi_prime, st.sstar) == (17, 1, 3, 5, 4)
    assert set(st.timings) == {f"phase{k}_{n}" for k, n in
                              [(1, "reference"), (2, "ecms"), (3, "bucket"), (4, "heads"), (5, "sstar"), (6, "induce")]}


def test_default_reference_is_first_document():
    res = build_gsa([ex.R])
    sa = build_suffix_array_bytes(encode_reference(ex.R))
    # the document ends with $ rather than #, which sorts the same way here
    assert res.gsa[:, 1].tolist() == sa.tolist()
    assert (res.gsa[:, 0] == 0).all()


def test_build_gsa_mutated_copies(backend):
    rng = np.random.default_rng(2024)
    for _ in range(5):
        seed = random_text(2000, rng=rng)
        docs = mutated_copies(seed, 10, 0.005, rng=rng)
        res = build_gsa(docs, block_size=int(rng.integers(1, 64)))
        assert [tuple(p) for p in res.gsa.tolist()] == naive_gsa(Collection.from_sequences(docs).docs)


def test_workers_give_same_result():
    rng = np.random.default_rng(3)
    docs = mutated_copies(random_text(500, rng=rng), 6, 0.01, rng=rng)
    a = build_gsa(docs, workers=1).gsa
    b = build_gsa(docs, workers=4).gsa
    assert (a == b).all()


def test_empty_collection():
    with pytest.raises(ValueError):
        build_gsa([])
