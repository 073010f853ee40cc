import random

import pytest

from grayspace.codec import (CodecParams, decode, decode_fast, decode_via_dual,
                             encode, encode_via_dual)
from grayspace.field import field_from_order, make_field
from grayspace import linalg as L
from grayspace.grassmann_gray import GraySequence, iter_simple, verify_gray
from grayspace.qcombin import gaussian

F2 = make_field(2, 1)


def test_params_validation():
    with pytest.raises(ValueError):
        CodecParams(3, 4, F2)
    p = CodecParams(4, 2, F2)
    assert p.size == 35


def test_encode_zero_is_simple():
    for (n, k, q) in [(4, 2, 2), (5, 3, 3), (3, 1, 4), (6, 2, 2)]:
        ctx = field_from_order(q)
        assert encode(CodecParams(n, k, ctx), 0) == L.simple_subspace(n, k,
                                                                      ctx)


def test_encode_range_check():
    p = CodecParams(4, 2, F2)
    with pytest.raises(ValueError):
        encode(p, 35)
    with pytest.raises(ValueError):
        encode(p, -1)


def test_encode_matches_build_simple():
    for (n, k, q) in [(2, 1, 2), (4, 2, 2), (5, 2, 2), (5, 3, 2),
                      (4, 2, 3), (3, 2, 4), (4, 3, 2)]:
        ctx = field_from_order(q)
        params = CodecParams(n, k, ctx)
        for m, item in enumerate(iter_simple(n, k, ctx)):
            assert encode(params, m) == item, (n, k, q, m)


def test_round_trip_and_fast_agree():
    for (n, k, q) in [(4, 2, 2), (5, 2, 2), (5, 3, 3), (4, 2, 4), (6, 3, 2)]:
        ctx = field_from_order(q)
        params = CodecParams(n, k, ctx)
        for m, item in enumerate(iter_simple(n, k, ctx)):
            assert decode(params, item) == m
            assert decode_fast(params, item) == m


def test_decode_covers_all_subspaces():
    # brute-force enumeration decodes to exactly 0..P-1
    for (n, k, q) in [(4, 2, 2), (3, 2, 3), (4, 1, 3)]:
        ctx = field_from_order(q)
        params = CodecParams(n, k, ctx)
        values = {decode(params, sub)
                  for sub in L.enumerate_subspaces(n, k, ctx)}
        assert values == set(range(gaussian(n, k, q)))


def test_decode_rejects_wrong_dimensions():
    params = CodecParams(4, 2, F2)
    with pytest.raises(ValueError):
        decode(params, L.simple_subspace(4, 3, F2))
    with pytest.raises(ValueError):
        decode(params, L.simple_subspace(3, 2, F2))


def test_monotone_structure():
    # indices below the (n-1,k) count stay inside the hyperplane
    for (n, k, q) in [(4, 2, 2), (5, 2, 3)]:
        ctx = field_from_order(q)
        params = CodecParams(n, k, ctx)
        split = gaussian(n - 1, k, q)
        for m in range(gaussian(n, k, q)):
            inside = all(r[-1] == 0 for r in encode(params, m).rows)
            assert inside == (m < split)


def test_gray_adjacency_of_encode_order():
    for (n, k, q) in [(4, 2, 2), (4, 2, 3)]:
        ctx = field_from_order(q)
        params = CodecParams(n, k, ctx)
        total = gaussian(n, k, q)
        prev = encode(params, total - 1)
        for m in range(total):
            cur = encode(params, m)
            assert L.grassmann_adjacent(prev, cur)
            prev = cur


def test_large_parameter_round_trip():
    rng = random.Random(6)
    params = CodecParams(64, 4, F2)
    total = params.size
    for _ in range(20):
        m = rng.randrange(total)
        sub = encode(params, m)
        assert decode(params, sub) == m
        assert decode_fast(params, sub) == m


def test_via_dual():
    params = CodecParams(4, 3, F2)
    items = [encode_via_dual(params, m) for m in range(15)]
    assert all(decode_via_dual(params, it) == m
               for m, it in enumerate(items))
    assert decode_via_dual(params, L.dual(L.simple_subspace(4, 1, F2))) == 0
    seq = GraySequence(4, 3, F2, tuple(items), True)
    assert verify_gray(seq).passed
    # below the midpoint it falls back to the primal codec
    p2 = CodecParams(4, 2, F2)
    assert encode_via_dual(p2, 7) == encode(p2, 7)
