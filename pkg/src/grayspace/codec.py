"""Enumerative coding for the simple Grassmannian Gray code.

encode maps an index m to the m-th subspace of the simple cyclic optimal
(n,k;q)-code without materializing the sequence; decode inverts it.  Both
walk the same three-case recursion the construction follows: a subspace
either is the base case, lies inside the hyperplane W^(n-1) (strip the
zero column), or is an extension of a (k-1)-dim base (peel off the
extending row and recurse on the base).

decode carries the Gaussian coefficients down the recursion by exact
step-down divisions; decode_fast instead recomputes them from scratch
with product trees, but only at the (at most k) extension levels.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import FieldContext
from .grassmann_gray import (class_at_position, class_position,
                             closing_class_index, _append_zero_col,
                             _nonpivot_columns, _rep_vector)
from .linalg import CanonicalSubspace, extend_subspace, simple_subspace
from .qcombin import gaussian, gaussian_product_tree, gaussian_step_down


@dataclass(frozen=True)
class CodecParams:
    n: int
    k: int
    ctx: FieldContext

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise ValueError("need 0 <= k <= n")

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def size(self) -> int:
        return gaussian(self.n, self.k, self.q)


def _block_class(ctx, n, k, q, i, g2, jpos, base, memo):
    """Class index visited at position jpos of block i (and vice versa)."""
    width = q ** (n - k)
    if g2 == 1:
        return jpos
    succ = _encode(n - 1, k - 1, q, ctx, (i + 1) % g2, g2, memo)
    last = closing_class_index(base, succ)
    return class_at_position(last, width, jpos)


def _encode(n, k, q, ctx, m, g, memo):
    """The m-th item, as a subspace of ambient dimension n; g = [n k]_q.

    memo caches finished items by (n, k, m) within one top-level call:
    each extension level needs both a base and its successor, and without
    sharing those two chains the recursion doubles per level.
    """
    key = (n, k, m)
    hit = memo.get(key)
    if hit is not None:
        return hit
    zeros = 0
    while True:
        if k == 0 or k == n:
            inner = simple_subspace(n, k, ctx)
            break
        g2, g1 = gaussian_step_down(g, n, k, q)
        if m <= g1 - 1:
            n -= 1
            g = g1
            zeros += 1
            continue
        width = q ** (n - k)
        t = m - g1 + 1
        i = (t // width) % g2
        jpos = t % width
        base = _encode(n - 1, k - 1, q, ctx, i, g2, memo)
        c = _block_class(ctx, n, k, q, i, g2, jpos, base, memo)
        v = _rep_vector(base, _nonpivot_columns(base), c)
        inner = extend_subspace(_append_zero_col(base), v)
        break
    for _ in range(zeros):
        inner = _append_zero_col(inner)
    memo[key] = inner
    return inner


def encode(params: CodecParams, m: int) -> CanonicalSubspace:
    """The m-th subspace of the simple (n,k;q) Gray code."""
    total = params.size
    if not 0 <= m < total:
        raise ValueError("index %d out of range [0, %d)" % (m, total))
    return _encode(params.n, params.k, params.q, params.ctx, m, total, {})


def _split_extension(rows, n):
    """Separate the unique row leaving the hyperplane from the rest."""
    special = None
    inner = []
    for r in rows:
        if r[n - 1]:
            if special is not None:
                raise ValueError("not a canonical extension matrix")
            special = r
        else:
            inner.append(r[:n - 1])
    assert special[n - 1] == 1
    return special, inner


def _last_nonzero(r):
    if r[-1]:
        return len(r) - 1
    try:
        return len(bytes(r).rstrip(b"\x00")) - 1
    except ValueError:
        return max(c for c, x in enumerate(r) if x)


def _decode(n, k, q, ctx, rows, g, fast, memo):
    while True:
        if k == 0 or k == n:
            return 0
        if fast:
            # no coefficient to carry per level, so all trailing zero
            # columns can be stripped in one jump
            top = max(_last_nonzero(r) for r in rows)
            if top < n - 1:
                n = top + 1
                rows = [r[:n] for r in rows]
            if k == n:
                return 0
            break
        g2, g1 = gaussian_step_down(g, n, k, q)
        if all(r[n - 1] == 0 for r in rows):
            rows = [r[:n - 1] for r in rows]
            n -= 1
            g = g1
            continue
        break
    if fast:
        g1 = gaussian_product_tree(n - 1, k, q)
        g2 = gaussian_product_tree(n - 1, k - 1, q)
    v, inner_rows = _split_extension(rows, n)
    base = CanonicalSubspace(ctx, n - 1, tuple(inner_rows),
                             tuple(next(c for c, x in enumerate(r) if x)
                                   for r in inner_rows))
    i = _decode(n - 1, k - 1, q, ctx, inner_rows, g2, fast, memo)
    width = q ** (n - k)
    c = 0
    for r in reversed(_nonpivot_columns(base)):
        c = c * q + v[r]
    if g2 == 1:
        jpos = c
    else:
        succ = _encode(n - 1, k - 1, q, ctx, (i + 1) % g2, g2, memo)
        last = closing_class_index(base, succ)
        jpos = width - 1 if c == last else class_position(last, c)
    return g1 + ((width * i + jpos - 1) % (width * g2))


def _check_input(params, W):
    if W.n != params.n or W.k != params.k:
        raise ValueError("subspace has parameters (%d, %d), codec expects "
                         "(%d, %d)" % (W.n, W.k, params.n, params.k))
    if W.ctx is not params.ctx:
        raise ValueError("field mismatch")


def decode(params: CodecParams, W: CanonicalSubspace) -> int:
    """Index of W in the simple (n,k;q) Gray code."""
    _check_input(params, W)
    return _decode(params.n, params.k, params.q, params.ctx,
                   list(W.rows), params.size, False, {})


def decode_fast(params: CodecParams, W: CanonicalSubspace) -> int:
    """decode, recomputing Gaussian coefficients only at extension levels."""
    _check_input(params, W)
    return _decode(params.n, params.k, params.q, params.ctx,
                   list(W.rows), None, True, {})


def _dual_params(params: CodecParams) -> CodecParams:
    return CodecParams(params.n, params.n - params.k, params.ctx)


def encode_via_dual(params: CodecParams, m: int) -> CanonicalSubspace:
    """encode on the smaller of the (n,k) and (n,n-k) problems.

    For 2k > n the index enumerates the dual Gray order: item m is the
    orthogonal complement of the m-th (n,n-k)-code element.
    """
    from .linalg import dual
    if 2 * params.k <= params.n:
        return encode(params, m)
    return dual(encode(_dual_params(params), m))


def decode_via_dual(params: CodecParams, W: CanonicalSubspace) -> int:
    from .linalg import dual
    if 2 * params.k <= params.n:
        return decode(params, W)
    _check_input(params, W)
    return decode(_dual_params(params), dual(W))
