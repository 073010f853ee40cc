"""Cyclic optimal Grassmannian Gray codes.

The recursive construction combines an (n-1,k;q)-code with an
(n-1,k-1;q)-code: every (k-1)-dim subspace of the hyperplane W^{n-1} is
extended by q^(n-k) one-dimensional steps outside the hyperplane, and the
(n-1,k;q)-code is spliced in at a compatible position.

`build_simple` is the fully specialized deterministic variant (simple
ambient spaces, explicit representative vectors, insertion offset 0,
shifted so the first element is simple); its output order is exactly what
the enumerative codec in codec.py reproduces.  `build_general` keeps the
construction's degrees of freedom and validates every proposed choice.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dfield

from .field import FieldContext
from .linalg import (CanonicalSubspace, canonicalize, contains, dual,
                     extend_subspace, grassmann_adjacent, intersect,
                     is_simple, pack_subspace, reduce_vector, simple_subspace,
                     span_vectors, format_subspace, parse_subspace)
from .qcombin import gaussian


class ConstraintViolation(Exception):
    """A choice source proposed something the construction forbids."""


@dataclass(frozen=True)
class GraySequence:
    """An (n,k;q)-Grassmannian Gray code as an explicit item list."""
    n: int
    k: int
    ctx: FieldContext
    items: tuple
    cyclic: bool

    @property
    def q(self) -> int:
        return self.ctx.q

    def __len__(self):
        return len(self.items)


@dataclass(frozen=True)
class ExtensionFamily:
    """A (k-1)-dim base in W^(n-1) with its q^(n-k) extension vectors.

    reps[j] is the canonical representative of the j-th equivalence class of
    W^n \\ W^(n-1) induced by the base: zero on the base's pivot columns,
    final coordinate 1, and the base-q digits of j on the remaining columns.
    """
    base: CanonicalSubspace
    reps: tuple

    @property
    def width(self) -> int:
        return len(self.reps)

    def extensions(self):
        ext = _append_zero_col(self.base)
        return [extend_subspace(ext, v) for v in self.reps]


def _append_zero_col(sub: CanonicalSubspace) -> CanonicalSubspace:
    return CanonicalSubspace(sub.ctx, sub.n + 1,
                             tuple(r + (0,) for r in sub.rows), sub.pivots)


def _nonpivot_columns(base: CanonicalSubspace):
    pivot_set = set(base.pivots)
    return [c for c in range(base.n) if c not in pivot_set]


def explicit_representatives(base: CanonicalSubspace,
                             ctx: FieldContext) -> ExtensionFamily:
    """The specialized choice of class representatives for one base.

    base lives in W^(n-1) (its ambient dimension); the representatives are
    vectors of W^n, i.e. one coordinate longer.
    """
    if base.ctx is not ctx:
        raise ValueError("base does not belong to the given field")
    q = ctx.q
    n = base.n + 1
    nonpiv = _nonpivot_columns(base)
    width = q ** len(nonpiv)
    reps = []
    for j in range(width):
        v = [0] * n
        v[n - 1] = 1
        jj = j
        for r in nonpiv:
            jj, d = divmod(jj, q)
            v[r] = d
        reps.append(tuple(v))
    return ExtensionFamily(base, tuple(reps))


def class_representative(base: CanonicalSubspace, v):
    """Canonical representative of [v]_base for v outside W^(n-1).

    v has length base.n + 1 and nonzero last coordinate; the representative
    is the unique class member that vanishes on base's pivot columns and has
    final coordinate 1.
    """
    ctx = base.ctx
    if len(v) != base.n + 1 or v[-1] == 0:
        raise ValueError("vector must leave the hyperplane")
    mul, sub, inv = ctx.mul, ctx.sub, ctx.inv
    v = list(v)
    for row, p in zip(base.rows, base.pivots):
        c = v[p]
        if c:
            f = mul(c, inv(row[p]))
            for t in range(base.n):
                if row[t]:
                    v[t] = sub(v[t], mul(f, row[t]))
    f = inv(v[-1])
    if f != 1:
        v = [mul(f, x) for x in v]
    return tuple(v)


def class_index(base: CanonicalSubspace, rep) -> int:
    """Position j of a canonical class representative in the explicit order."""
    q = base.ctx.q
    j = 0
    for r in reversed(_nonpivot_columns(base)):
        j = j * q + rep[r]
    return j


def class_vectors(base: CanonicalSubspace, v):
    """Every member of [v]_base: alpha*v + w for alpha != 0, w in the base."""
    ctx = base.ctx
    add, mul = ctx.add, ctx.mul
    out = []
    span = [w + (0,) for w in span_vectors(base)]
    for alpha in range(1, ctx.q):
        av = tuple(mul(alpha, x) for x in v)
        for w in span:
            out.append(tuple(add(x, y) for x, y in zip(av, w)))
    return out


def compatible_next_vectors(c1: CanonicalSubspace, c2: CanonicalSubspace,
                            v1):
    """The q subspaces C2 + <v1 + eps*u1> meeting C1 + <v1> in dim k-1.

    c1 and c2 are (k-1)-dim subspaces of W^(n-1) meeting in dim k-2; v1 is a
    vector of W^n outside W^(n-1); u1 completes the intersection to c1.
    """
    ctx = c1.ctx
    if c1.ctx is not c2.ctx or c1.n != c2.n or c1.k != c2.k:
        raise ValueError("bases must have equal dimension and ambient space")
    if len(v1) != c1.n + 1 or v1[-1] == 0:
        raise ValueError("v1 must leave the hyperplane")
    inter = intersect(c1, c2)
    if inter.k != c1.k - 1:
        raise ValueError("bases must intersect in dimension k-2")
    u1 = None
    for row in c1.rows:
        if not contains(inter, row):
            u1 = row + (0,)
            break
    assert u1 is not None
    n = c1.n + 1
    add, mul = ctx.add, ctx.mul
    c2_rows = [r + (0,) for r in c2.rows]
    out = []
    for eps in range(ctx.q):
        v2 = tuple(add(x, mul(eps, y)) for x, y in zip(v1, u1))
        out.append(canonicalize(c2_rows + [v2], n, ctx))
    assert len(set(out)) == ctx.q
    return out


# ---------------------------------------------------------------------------
# The specialized simple construction, streamed in codec order.
#
# Within a block the classes cannot simply be visited as j = 0, 1, ...: the
# last class of each block and the first class of the next must share a
# vector, or the two extended subspaces meet only in dim k-2.  The
# deterministic rule used here opens every block with class 0 (the vector
# e_{n-1} alone) and closes it with the class of e_{n-1} + x, where x is
# the next base's extra direction reduced against the current base.  That
# shared direction makes consecutive blocks adjacent, and the rule is local
# so the codec can recompute it from indices alone.


def closing_class_index(base: CanonicalSubspace,
                        succ: CanonicalSubspace) -> int:
    """Class of the block-closing extension of base, given the next base.

    Both bases live in W^(n-1) and intersect in codimension 1 there.  The
    result is never 0, so the closing class differs from the opening one.
    """
    ctx = base.ctx
    x = None
    for u in succ.rows:
        if not contains(base, u):
            x = reduce_vector(base, u)
            break
    if x is None:
        raise ValueError("successor base equals the current base")
    lead = next(i for i, c in enumerate(x) if c)
    f = ctx.inv(x[lead])
    if f != 1:
        mul = ctx.mul
        x = [mul(f, c) for c in x]
    q = ctx.q
    idx = 0
    for r in reversed(_nonpivot_columns(base)):
        idx = idx * q + x[r]
    return idx


def block_class_order(base: CanonicalSubspace, succ, width: int):
    """Visit order of the classes of one block of the simple code.

    With no distinct successor the order is plain 0..width-1; otherwise
    class 0 opens, the closing class goes last, the rest stay ascending.
    """
    if succ is None or succ == base:
        return list(range(width))
    last = closing_class_index(base, succ)
    return [0] + [c for c in range(1, width) if c != last] + [last]


def class_position(last: int, c: int) -> int:
    """Position of class c inside [0, ascending middle, last]."""
    if c == 0:
        return 0
    if c == last:
        raise ValueError("closing class position depends on the width")
    return c if c < last else c - 1


def class_at_position(last: int, width: int, j: int) -> int:
    """Inverse of class_position, with j = width-1 giving the closer."""
    if j == 0:
        return 0
    if j == width - 1:
        return last
    return j if j < last else j + 1


def _rep_vector(base, nonpiv, j):
    q = base.ctx.q
    n = base.n + 1
    v = [0] * n
    v[n - 1] = 1
    for r in nonpiv:
        j, d = divmod(j, q)
        v[r] = d
    return v


def iter_simple(n: int, k: int, ctx: FieldContext):
    """Stream the simple cyclic optimal (n,k;q)-code in index order."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if k == 0 or k == n:
        yield simple_subspace(n, k, ctx)
        return
    for sub in iter_simple(n - 1, k, ctx):
        yield _append_zero_col(sub)
    width = ctx.q ** (n - k)
    held = None
    bases = iter_simple(n - 1, k - 1, ctx)
    first_base = prev = next(bases)
    for base in bases:
        held = yield from _emit_block(prev, base, width, held)
        prev = base
    held = yield from _emit_block(prev, first_base, width, held)
    yield held


def _emit_block(base, succ, width, held):
    """Yield one block's extensions in order; hold back the very first."""
    ext = _append_zero_col(base)
    nonpiv = _nonpivot_columns(base)
    for c in block_class_order(base, succ, width):
        item = extend_subspace(ext, _rep_vector(base, nonpiv, c))
        if held is None:
            held = item      # C*_0 closes the cycle
        else:
            yield item
    return held


def build_simple(n: int, k: int, ctx: FieldContext) -> GraySequence:
    return GraySequence(n, k, ctx, tuple(iter_simple(n, k, ctx)), True)


# ---------------------------------------------------------------------------
# General construction with explicit degrees of freedom.


class ChoiceSource:
    """Deterministic choices reproducing the specialized construction."""

    def extension_order(self, n, k, block_index, num_blocks, width,
                        base, succ, allowed_first, allowed_last):
        """Permutation of range(width): the class visit order for one block."""
        return block_class_order(base, succ, width)

    def insertion_index(self, n, k, period):
        return period - 1

    def insertion_offset(self, n, k, width):
        return 0


class RandomChoiceSource(ChoiceSource):
    """Uniform random choices within the construction's constraints."""

    def __init__(self, seed=None):
        self.rng = random.Random(seed)

    def extension_order(self, n, k, block_index, num_blocks, width,
                        base, succ, allowed_first, allowed_last):
        idx = list(range(width))
        if allowed_first is None and allowed_last is None:
            self.rng.shuffle(idx)
            return idx
        firsts = sorted(allowed_first) if allowed_first is not None else idx
        lasts = sorted(allowed_last) if allowed_last is not None else idx
        pairs = [(f, l) for f in firsts for l in lasts if f != l]
        f, l = self.rng.choice(pairs)
        middle = [t for t in idx if t != f and t != l]
        self.rng.shuffle(middle)
        return [f] + middle + [l]

    def insertion_index(self, n, k, period):
        return self.rng.randrange(period)

    def insertion_offset(self, n, k, width):
        return self.rng.randrange(width - 1) if width > 1 else 0


class ScriptedChoiceSource(ChoiceSource):
    """Choices read from a script mapping (n, k) to explicit decisions.

    Script values are dicts with optional keys "orders" (one permutation per
    block), "j" (insertion index) and "ell" (insertion offset); anything
    missing falls back to the specialized defaults.
    """

    def __init__(self, script):
        self.script = script

    def extension_order(self, n, k, block_index, num_blocks, width,
                        base, succ, allowed_first, allowed_last):
        entry = self.script.get((n, k), {})
        orders = entry.get("orders")
        if orders is None:
            return block_class_order(base, succ, width)
        return list(orders[block_index])

    def insertion_index(self, n, k, period):
        return self.script.get((n, k), {}).get("j", period - 1)

    def insertion_offset(self, n, k, width):
        return self.script.get((n, k), {}).get("ell", 0)


def _allowed_class_indices(prev_base, prev_rep, cur_base):
    """Class indices of cur_base whose class meets [prev_rep]_prev_base."""
    out = set()
    for vec in class_vectors(prev_base, prev_rep):
        rep = class_representative(cur_base, vec)
        out.add(class_index(cur_base, rep))
    assert len(out) == cur_base.ctx.q  # exactly q compatible successors
    return out


def build_general(n: int, k: int, ctx: FieldContext,
                  choice_source: ChoiceSource | None = None) -> GraySequence:
    """Run the construction with a pluggable choice source.

    Invalid proposals (a first/last class breaking the class-intersection
    chain, an out-of-range insertion) raise ConstraintViolation.
    """
    if choice_source is None:
        choice_source = ChoiceSource()
    cache: dict = {}
    return _build_general(n, k, ctx, choice_source, cache)


def _build_general(n, k, ctx, source, cache):
    key = (n, k)
    if key in cache:
        return cache[key]
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if k == 0 or k == n:
        seq = GraySequence(n, k, ctx, (simple_subspace(n, k, ctx),), True)
        cache[key] = seq
        return seq
    code_k = _build_general(n - 1, k, ctx, source, cache)        # C'
    code_km1 = _build_general(n - 1, k - 1, ctx, source, cache)  # C''
    q = ctx.q
    width = q ** (n - k)
    bases = code_km1.items
    nb = len(bases)
    families = [explicit_representatives(b, ctx) for b in bases]

    orders = []
    prev_last_rep = None
    first_rep = None
    for i, fam in enumerate(families):
        allowed_first = allowed_last = None
        if nb > 1:
            if i > 0:
                allowed_first = _allowed_class_indices(
                    bases[i - 1], prev_last_rep, bases[i])
            if i == nb - 1:
                allowed_last = _allowed_class_indices(
                    bases[0], first_rep, bases[i])
        succ = bases[(i + 1) % nb] if nb > 1 else None
        order = source.extension_order(n, k, i, nb, width,
                                       bases[i], succ,
                                       allowed_first, allowed_last)
        if sorted(order) != list(range(width)):
            raise ConstraintViolation(
                "block %d order is not a permutation of the %d classes"
                % (i, width))
        if allowed_first is not None and order[0] not in allowed_first:
            raise ConstraintViolation(
                "block %d first class %d breaks the intersection chain"
                % (i, order[0]))
        if allowed_last is not None and order[-1] not in allowed_last:
            raise ConstraintViolation(
                "final block last class %d breaks the wraparound chain"
                % (order[-1],))
        orders.append(order)
        prev_last_rep = fam.reps[order[-1]]
        if i == 0:
            first_rep = fam.reps[order[0]]

    cstar = []
    for fam, order in zip(families, orders):
        ext = _append_zero_col(fam.base)
        for j in order:
            cstar.append(extend_subspace(ext, fam.reps[j]))

    period = len(code_k.items)
    j_ins = source.insertion_index(n, k, period)
    if not 0 <= j_ins < period:
        raise ConstraintViolation("insertion index %r out of range" % (j_ins,))
    ell = source.insertion_offset(n, k, width)
    if not 0 <= ell <= width - 2:
        raise ConstraintViolation("insertion offset %r out of range" % (ell,))
    if period >= 2:
        u = intersect(code_k.items[j_ins],
                      code_k.items[(j_ins + 1) % period])
        i_ins = bases.index(u)
    else:
        i_ins = 0
    pos = i_ins * width + ell
    shifted = [_append_zero_col(code_k.items[(j_ins + 1 + t) % period])
               for t in range(period)]
    items = cstar[:pos + 1] + shifted + cstar[pos + 1:]
    # hand the successor level the shifted version, so the deterministic
    # choices reproduce the simple code exactly
    items = items[1:] + items[:1]
    seq = GraySequence(n, k, ctx, tuple(items), True)
    cache[key] = seq
    return seq


# ---------------------------------------------------------------------------
# Verification harness (uses only linalg primitives) and duality.


@dataclass
class GrayReport:
    n: int
    k: int
    q: int
    cyclic: bool
    size: int
    expected_size: int
    duplicates: int
    adjacency_failures: int
    wraparound_ok: bool | None
    first_simple: bool
    ends_intersection_simple: bool | None
    failures: list = dfield(default_factory=list)

    @property
    def distinct(self) -> bool:
        return self.duplicates == 0

    @property
    def optimal(self) -> bool:
        return self.size == self.expected_size

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_gray_stream(items, n, k, ctx, cyclic=True,
                       require_optimal=True) -> GrayReport:
    """Check a streamed item sequence against the Gray-code definition."""
    seen = set()
    duplicates = 0
    adjacency_failures = 0
    first = prev = None
    size = 0
    failures = []
    for item in items:
        if item.n != n or item.k != k or item.ctx is not ctx:
            failures.append("item %d has wrong parameters" % size)
            size += 1
            continue
        key = pack_subspace(item)
        if key in seen:
            duplicates += 1
        seen.add(key)
        if prev is not None and not grassmann_adjacent(prev, item):
            adjacency_failures += 1
        if first is None:
            first = item
        prev = item
        size += 1
    expected = gaussian(n, k, ctx.q)
    wraparound_ok = None
    if cyclic and size > 1:
        wraparound_ok = grassmann_adjacent(prev, first)
    first_simple = is_simple(first) if first is not None else False
    ends_simple = None
    if first is not None and size > 1 and k >= 1:
        ends_simple = is_simple(intersect(first, prev))
    if duplicates:
        failures.append("%d duplicate subspaces" % duplicates)
    if adjacency_failures:
        failures.append("%d consecutive pairs not adjacent"
                        % adjacency_failures)
    if wraparound_ok is False:
        failures.append("last and first items not adjacent")
    if require_optimal and size != expected:
        failures.append("size %d != [n k]_q = %d" % (size, expected))
    return GrayReport(n, k, ctx.q, cyclic, size, expected, duplicates,
                      adjacency_failures, wraparound_ok, first_simple,
                      ends_simple, failures)


def verify_gray(seq: GraySequence, require_optimal=True) -> GrayReport:
    return verify_gray_stream(seq.items, seq.n, seq.k, seq.ctx,
                              cyclic=seq.cyclic,
                              require_optimal=require_optimal)


def dual_code(seq: GraySequence) -> GraySequence:
    """Item-wise orthogonal complement: an (n, n-k; q) Gray sequence."""
    return GraySequence(seq.n, seq.n - seq.k, seq.ctx,
                        tuple(dual(item) for item in seq.items), seq.cyclic)


# ---------------------------------------------------------------------------
# GRAY file format: header "GRAY n k q P cyclic", then P subspace blocks in
# the linalg textual format separated by blank lines.


def write_gray_stream(f, n, k, ctx, items, count, cyclic=True):
    f.write("GRAY %d %d %d %d %d\n" % (n, k, ctx.q, count, 1 if cyclic else 0))
    for item in items:
        f.write("\n")
        f.write(format_subspace(item))
        f.write("\n")


def write_gray_file(f, seq: GraySequence):
    write_gray_stream(f, seq.n, seq.k, seq.ctx, seq.items, len(seq.items),
                      seq.cyclic)


def read_gray_file(f) -> GraySequence:
    from .field import field_from_order
    text = f.read()
    chunks = [c for c in text.split("\n\n") if c.strip()]
    header = chunks[0].splitlines()[0].split()
    if len(header) != 6 or header[0] != "GRAY":
        raise ValueError("not a GRAY file")
    n, k, q, count, cyc = (int(x) for x in header[1:])
    ctx = field_from_order(q)
    blocks = chunks[0].splitlines()[1:]
    items = []
    if blocks:
        raise ValueError("malformed GRAY header block")
    for chunk in chunks[1:]:
        sub, _ = parse_subspace(chunk, ctx)
        items.append(sub)
    if len(items) != count:
        raise ValueError("GRAY file: expected %d blocks, found %d"
                         % (count, len(items)))
    return GraySequence(n, k, ctx, tuple(items), bool(cyc))
