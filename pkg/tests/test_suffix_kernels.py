import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsacms.alphabet import InputFormatError, encode_reference, from_display
from gsacms.oracles import naive_lcp, naive_suffix_array
from gsacms.suffix_kernels import (
    InvariantError, SmallerValueIndex, build_plcp, build_suffix_array_bytes,
    build_suffix_array_ints, invert_permutation, plcp_to_lcp,
)

from . import worked_example as ex

texts = st.text(alphabet="ACGTN", max_size=60).map(encode_reference)


def test_reference_suffix_array_golden(backend):
    sa = build_suffix_array_bytes(encode_reference(ex.R))
    assert sa.tolist() == ex.SA


@pytest.mark.parametrize("s", ["#", "A#", "AAAA#", "BANANA#", "ABAB#", "MISSISSIPPI#"])
def test_small_suffix_arrays(backend, s):
    t = from_display(s)
    assert build_suffix_array_bytes(t).tolist() == naive_suffix_array(t)


def test_unterminated_text_rejected():
    with pytest.raises(InputFormatError):
        build_suffix_array_bytes(np.frombuffer(b"ACGT", dtype=np.uint8))


@settings(max_examples=150, deadline=None)
@given(texts)
def test_suffix_array_property(t):
    assert build_suffix_array_bytes(t).tolist() == naive_suffix_array(t)


def test_backends_agree_on_random_texts():
    from .conftest import BACKENDS
    rng = np.random.default_rng(3)
    for _ in range(50):
        body = rng.integers(2, 6, size=int(rng.integers(0, 300)))
        t = np.concatenate((body, [0])).astype(np.int64)
        outs = [b.sais(t, 6).tolist() for b in BACKENDS.values()]
        assert all(o == outs[0] for o in outs)


def test_integer_alphabet(backend):
    seq = [3, 1, 2, 1, 2, 0]
    sa = build_suffix_array_ints(seq, 4)
    assert sa.tolist() == sorted(range(6), key=lambda i: seq[i:])


@pytest.mark.parametrize("seq", [[1, 0, 0], [2, 1, 1], [], [1, 5, 0]])
def test_integer_alphabet_rejects_bad_input(seq):
    with pytest.raises(InputFormatError):
        build_suffix_array_ints(seq, 3)


def test_integer_alphabet_large(backend):
    rng = np.random.default_rng(11)
    seq = np.concatenate((rng.integers(1, 1000, size=500), [0]))
    sa = build_suffix_array_ints(seq, 1000)
    lst = seq.tolist()
    assert sa.tolist() == sorted(range(len(lst)), key=lambda i: lst[i:])


def test_lcp_of_example_reference(backend):
    t = encode_reference(ex.R)
    sa = build_suffix_array_bytes(t)
    lcp = plcp_to_lcp(build_plcp(t, sa), sa)
    assert lcp.tolist() == naive_lcp(t, sa.tolist())
    assert lcp[5] == 2  # ATACT# / ATGGCA...


def test_abab_lcp(backend):
    t = from_display("ABAB#")
    sa = build_suffix_array_bytes(t)
    assert plcp_to_lcp(build_plcp(t, sa), sa).tolist() == [0, 0, 2, 0, 1]


@settings(max_examples=100, deadline=None)
@given(texts)
def test_lcp_property(t):
    sa = build_suffix_array_bytes(t)
    plcp = build_plcp(t, sa)
    assert plcp_to_lcp(plcp, sa).tolist() == naive_lcp(t, sa.tolist())
    # PLCP never drops by more than one from one text position to the next
    assert (np.diff(plcp) >= -1).all()


def test_invert_permutation():
    assert invert_permutation([2, 0, 1]).tolist() == [1, 2, 0]
    with pytest.raises(InvariantError):
        invert_permutation([0, 0, 1])
    with pytest.raises(InvariantError):
        invert_permutation([0, 3])


def _naive_sv(a, i, step):
    k = i + step
    while 0 <= k < len(a):
        if a[k] < a[i]:
            return k
        k += step
    return None


@pytest.mark.parametrize("values", [[0, 0, 2, 0, 1], [3, 1, 4, 1, 5, 9, 2, 6], [5], []])
def test_smaller_values(backend, values):
    sv = SmallerValueIndex(values)
    for i in range(len(values)):
        assert sv.psv(i) == _naive_sv(values, i, -1)
        assert sv.nsv(i) == _naive_sv(values, i, 1)
        assert sv.query(i, "psv") == sv.psv(i)


def test_smaller_values_errors():
    sv = SmallerValueIndex([1, 2])
    with pytest.raises(IndexError):
        sv.psv(2)
    with pytest.raises(ValueError):
        sv.query(0, "left")


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 8), max_size=50))
def test_smaller_values_property(values):
    sv = SmallerValueIndex(values)
    for i in range(len(values)):
        assert sv.psv(i) == _naive_sv(values, i, -1)
        assert sv.nsv(i) == _naive_sv(values, i, 1)


def test_kernels_reject_mismatched_arrays(backend):
    t = encode_reference("ACGT")
    sa = build_suffix_array_bytes(t)
    with pytest.raises(ValueError):
        backend.phi_plcp(t, sa[:-1])
    with pytest.raises(ValueError):
        backend.phi_plcp(t, sa + 1)
    with pytest.raises(ValueError):
        backend.sais(np.array([1, 0, 0]), 2)
    with pytest.raises(ValueError):
        backend.sais(np.array([3, 0]), 2)
    z = np.zeros(5, dtype=np.int64)
    with pytest.raises(ValueError):
        backend.ecms(t, sa, sa, z, z, z[:4], z[:1], 8, np.array([2, 1], dtype=np.uint8), True)
    with pytest.raises(ValueError):
        backend.induce(t, t[:2], t, np.array([7]), np.array([4]), 256)
