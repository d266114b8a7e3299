import io
from bisect import bisect_right

import numpy as np
import pytest

from gsacms.alphabet import DOC_END, encode_document, encode_reference
from gsacms.cms_store import build_store, dump_store, ems_at, expand_positions, ihead_pred, load_store
from gsacms.matching_stats import DocHeads, MatchCounters, compute_ecms
from gsacms.reference_index import build_reference_index
from gsacms.suffix_kernels import InvariantError
from gsacms.synth import mutated_copies, random_text

from . import worked_example as ex


@pytest.fixture
def fig_parts():
    doc = encode_document(ex.S)
    ref = build_reference_index(encode_reference(ex.R), [doc])
    return ref, compute_ecms(ref, doc)


def _heads_at(positions, length):
    n = len(positions)
    z = np.zeros(n, dtype=np.int64)
    return DocHeads(np.asarray(positions, dtype=np.int64), z, z, z, z.astype(np.uint8),
                    z.astype(np.uint8), length, MatchCounters(0, 0, 0))


def test_samples(fig_parts):
    _, heads = fig_parts
    store = build_store([heads], 2)
    assert store.samples[0].tolist() == [0, 10, 16]
    assert store.deltas[0].dtype == np.uint32
    assert np.concatenate(([0], np.cumsum(store.deltas[0]))).tolist() == ex.INSERT_HEADS
    assert build_store([heads], 1).samples[0].tolist() == ex.INSERT_HEADS
    assert store.chi_prime == 5 and store.chi == 3
    single = build_store([_heads_at([0], 1)])
    assert single.samples[0].tolist() == [0] and len(single.deltas[0]) == 0


@pytest.mark.parametrize("positions", [[1, 3], [0, 2, 2], [0, 5, 4]])
def test_build_store_rejects(positions):
    with pytest.raises(InvariantError):
        build_store([_heads_at(positions, 10)])


def test_ihead_pred_examples(fig_parts):
    _, heads = fig_parts
    store = build_store([heads], 2)
    j = store.docs[0].j
    assert j[ihead_pred(store, 0, 12)] == 10
    assert j[ihead_pred(store, 0, 0)] == 0
    assert j[ihead_pred(store, 0, 16)] == 16
    with pytest.raises(IndexError):
        ihead_pred(store, 0, 17)


@pytest.mark.parametrize("b_pred", [1, 2, 3, 7, 64])
def test_ihead_pred_random(b_pred):
    rng = np.random.default_rng(b_pred)
    pos = np.unique(np.concatenate(([0], rng.integers(1, 500, size=80))))
    store = build_store([_heads_at(pos, 500)], b_pred)
    plist = pos.tolist()
    for i in range(500):
        assert ihead_pred(store, 0, i) == bisect_right(plist, i) - 1


def test_ems_at_examples(fig_parts):
    ref, heads = fig_parts
    store = build_store([heads])
    e = ems_at(store, ref, 0, 12)
    assert (e.q, e.ell, e.x, e.c, e.ip) == (2, 4, "S", DOC_END, 5)
    e = ems_at(store, ref, 0, 4)
    assert (e.q, e.ell, e.x, e.c) == (5, 5, "L", ord("T"))
    e = ems_at(store, ref, 0, 8)
    assert (e.q, e.ell, e.x, e.c) == (2, 2, "L", ord("T"))
    rows = [ems_at(store, ref, 0, i) for i in range(17)]
    assert [r.q for r in rows] == ex.Q
    assert [r.ell for r in rows] == ex.MS_ELL


def test_expand_positions_agrees_with_ems_at():
    rng = np.random.default_rng(1)
    seed = random_text(300, rng=rng)
    docs = [encode_document(d) for d in mutated_copies(seed, 3, 0.02, rng=rng)]
    ref = build_reference_index(encode_reference(seed), docs, 8)
    store = build_store([compute_ecms(ref, d) for d in docs], 4)
    for d, doc in enumerate(docs):
        pos = np.arange(len(doc))
        h, q, ell, x, c, ip = expand_positions(store, d, pos, ref.isa)
        for i in range(len(doc)):
            e = ems_at(store, ref, d, i)
            assert (e.q, e.ell, "SL"[x[i]], e.c, e.ip) == (q[i], ell[i], e.x, c[i], ip[i])
            assert h[i] == ihead_pred(store, d, i)
            # q is an occurrence of the matched prefix
            assert ref.text[e.q:e.q + e.ell].tobytes() == doc[i:i + e.ell].tobytes()


def test_dump_round_trip(fig_parts):
    ref, heads = fig_parts
    store = build_store([heads, heads], 3)
    buf = io.BytesIO()
    dump_store(store, buf)
    buf.seek(0)
    back = load_store(buf)
    assert back.b_pred == 3 and len(back) == 2
    for a, b in zip(store.docs, back.docs):
        assert a.records() == b.records()
        assert a.length == b.length


def test_load_rejects_garbage():
    with pytest.raises(ValueError):
        load_store(io.BytesIO(b"NOPE" + bytes(20)))
