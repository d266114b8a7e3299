import numpy as np
import pytest

from gsacms.alphabet import encode_document, encode_reference, from_display, to_display
from gsacms.oracles import naive_lcp, naive_ms
from gsacms.reference_index import augment_reference, build_reference_index

from . import worked_example as ex


@pytest.mark.parametrize("ref, docs, want", [
    ("ACGT#", ["ACGNNNT$"], "ACGTNNN#"),
    ("ACGT#", ["ACGT$"], "ACGT#"),
    ("AC#", ["AB$", "BBA$"], "ACBB#"),
    ("A#", ["ZAY$", "YY$"], "AYYZ#"),
])
def test_augment(ref, docs, want):
    out = augment_reference(from_display(ref), [from_display(d) for d in docs])
    assert to_display(out) == want


def test_augment_is_idempotent():
    docs = [from_display("NNACGXT$"), from_display("XXX$")]
    once = augment_reference(from_display("ACGT#"), docs)
    assert augment_reference(once, docs).tolist() == once.tolist()


def test_augmentation_leaves_zero_length_only_at_terminator():
    rng = np.random.default_rng(0)
    for _ in range(30):
        ref = encode_reference("".join(rng.choice(list("ACG"), size=20)))
        doc = encode_document("".join(rng.choice(list("ACGTN"), size=40)))
        idx = build_reference_index(ref, [doc])
        ells = [e for _, e in naive_ms(idx.text, doc)]
        assert all(e > 0 for e in ells[:-1]) and ells[-1] == 0


def test_golden_reference_index(backend):
    idx = build_reference_index(encode_reference(ex.R), [encode_document(ex.S)])
    assert idx.n == 17
    assert idx.sa.tolist() == ex.SA
    assert idx.isa[2] == 5 and idx.isa[0] == 15
    assert idx.lcp.tolist() == naive_lcp(idx.text, ex.SA)
    assert idx.lcp_sum == sum(naive_lcp(idx.text, ex.SA))


def test_blocks():
    idx = build_reference_index(from_display("ABAB#"), block_size=2)
    assert idx.lcp.tolist() == [0, 0, 2, 0, 1]
    assert idx.block_min.tolist() == [0, 0, 1]
    assert idx.block_max.tolist() == [0, 2, 1]
    whole = build_reference_index(from_display("ABAB#"), block_size=5)
    assert whole.block_max.tolist() == [whole.lcp_max] == [2]
    assert whole.block_min.tolist() == [0]


def test_bad_block_size():
    with pytest.raises(ValueError):
        build_reference_index(from_display("A#"), block_size=0)
