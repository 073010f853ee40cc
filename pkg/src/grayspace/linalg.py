"""Matrices and subspaces over GF(q).

Matrices are tuples of rows; a row is a tuple of element indices (see
field.py).  A subspace is represented by its unique canonical matrix: the
reduced row echelon basis of the row span transformed by the recursive map
`tau`.  Canonical matrices are in row echelon form (leading coefficients
need not be 1), equal row spans give byte-identical canonical matrices, and
subspace equality is defined as equality of canonical matrices.

The 0 x n empty matrix is the canonical form of the trivial subspace.
"""

from __future__ import annotations

from itertools import combinations, product

from .field import FieldContext


class CanonicalSubspace:
    """A k-dimensional subspace of GF(q)^n in canonical (tau) form."""

    __slots__ = ("ctx", "n", "k", "rows", "pivots")

    def __init__(self, ctx: FieldContext, n: int, rows, pivots):
        self.ctx = ctx
        self.n = n
        self.rows = rows
        self.pivots = pivots
        self.k = len(rows)

    def __eq__(self, other):
        return (isinstance(other, CanonicalSubspace)
                and self.ctx is other.ctx
                and self.n == other.n
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return "CanonicalSubspace(k=%d, n=%d, q=%d, rows=%r)" % (
            self.k, self.n, self.ctx.q, self.rows)


def rref(rows, n: int, ctx: FieldContext):
    """Reduced row echelon form of the row span.

    Returns (rows, pivots); zero rows are dropped, leading coefficients are
    1 and are the only nonzero entries in their columns.
    """
    mul, sub, inv = ctx.mul, ctx.sub, ctx.inv
    work = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(n):
        piv = None
        for i in range(rank, len(work)):
            if work[i][col]:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        row = work[rank]
        f = inv(row[col])
        if f != 1:
            work[rank] = row = [mul(f, x) for x in row]
        for i in range(len(work)):
            if i != rank and work[i][col]:
                g = work[i][col]
                other = work[i]
                work[i] = [sub(x, mul(g, y)) for x, y in zip(other, row)]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return [tuple(r) for r in work[:rank]], tuple(pivots)


def _leading(row):
    for j, x in enumerate(row):
        if x:
            return j
    return None


def is_rref(rows, n: int, ctx: FieldContext) -> bool:
    last = -1
    for i, row in enumerate(rows):
        lead = _leading(row)
        if lead is None or lead <= last:
            return False
        if row[lead] != 1:
            return False
        for other in rows[:i] + rows[i + 1:]:
            if other[lead]:
                return False
        last = lead
    return True


def tau(rows, n: int, ctx: FieldContext):
    """The recursive canonicalizing transformation on a full-rank rref matrix.

    Preserves the row span and the pivot set; the output is in row echelon
    form but not reduced.
    """
    if not is_rref(rows, n, ctx):
        raise ValueError("tau requires a full-rank reduced row echelon input")
    return _tau(list(map(list, rows)), n, ctx)


def _tau(work, n, ctx):
    k = len(work)
    if k == 0:
        return ()
    if all(row[n - 1] == 0 for row in work):
        inner = _tau([row[:-1] for row in work], n - 1, ctx)
        return tuple(row + (0,) for row in inner)
    mul, sub, inv = ctx.mul, ctx.sub, ctx.inv
    i = max(idx for idx, row in enumerate(work) if row[n - 1])
    row = work[i]
    f = inv(row[n - 1])
    if f != 1:
        row = [mul(f, x) for x in row]
    for idx in range(k):
        if idx != i and work[idx][n - 1]:
            g = work[idx][n - 1]
            work[idx] = [sub(x, mul(g, y)) for x, y in zip(work[idx], row)]
    rest = [work[idx][:-1] for idx in range(k) if idx != i]
    inner = _tau(rest, n - 1, ctx)
    out = [r + (0,) for r in inner]
    out.insert(i, tuple(row))
    return tuple(out)


def canonicalize(rows, n: int, ctx: FieldContext) -> CanonicalSubspace:
    """Canonical subspace spanned by arbitrary row vectors (rank deduced)."""
    reduced, pivots = rref(rows, n, ctx)
    return CanonicalSubspace(ctx, n, tau(reduced, n, ctx), pivots)


def trivial_subspace(n: int, ctx: FieldContext) -> CanonicalSubspace:
    return CanonicalSubspace(ctx, n, (), ())


def simple_subspace(n: int, k: int, ctx: FieldContext) -> CanonicalSubspace:
    """The subspace with canonical matrix [I_k | 0]."""
    rows = tuple(tuple(1 if j == i else 0 for j in range(n))
                 for i in range(k))
    return CanonicalSubspace(ctx, n, rows, tuple(range(k)))


def full_subspace(n: int, ctx: FieldContext) -> CanonicalSubspace:
    return simple_subspace(n, n, ctx)


def is_simple(a: CanonicalSubspace) -> bool:
    return a == simple_subspace(a.n, a.k, a.ctx)


def _check_ambient(a: CanonicalSubspace, b: CanonicalSubspace):
    if a.ctx is not b.ctx or a.n != b.n:
        raise ValueError("subspaces live in different ambient spaces")


def subspace_sum(a: CanonicalSubspace, b: CanonicalSubspace):
    _check_ambient(a, b)
    return canonicalize(a.rows + b.rows, a.n, a.ctx)


def intersect(a: CanonicalSubspace, b: CanonicalSubspace):
    """Intersection via the left kernel of the stacked bases."""
    _check_ambient(a, b)
    ctx, n = a.ctx, a.n
    stacked = list(a.rows) + list(b.rows)
    m = len(stacked)
    mul, sub, inv = ctx.mul, ctx.sub, ctx.inv
    # eliminate with an identity augmentation; rows that vanish give
    # combinations u*A + v*B = 0, and then u*A lies in the intersection
    work = [list(stacked[i]) + [1 if j == i else 0 for j in range(m)]
            for i in range(m)]
    rank = 0
    for col in range(n):
        piv = None
        for i in range(rank, m):
            if work[i][col]:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        row = work[rank]
        f = inv(row[col])
        if f != 1:
            work[rank] = row = [mul(f, x) for x in row]
        for i in range(rank + 1, m):
            if work[i][col]:
                g = work[i][col]
                work[i] = [sub(x, mul(g, y)) for x, y in zip(work[i], row)]
        rank += 1
    vectors = []
    ka = a.k
    for i in range(rank, m):
        combo = work[i][n:]
        vec = [0] * n
        add = ctx.add
        for t in range(ka):
            c = combo[t]
            if c:
                arow = a.rows[t]
                vec = [add(x, mul(c, y)) for x, y in zip(vec, arow)]
        vectors.append(tuple(vec))
    return canonicalize(vectors, n, ctx)


def dual(a: CanonicalSubspace) -> CanonicalSubspace:
    """Orthogonal complement under the standard bilinear form."""
    ctx, n = a.ctx, a.n
    reduced, pivots = rref(a.rows, n, ctx)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    neg = ctx.neg
    vectors = []
    for f in free:
        vec = [0] * n
        vec[f] = 1
        for i, p in enumerate(pivots):
            vec[p] = neg(reduced[i][f])
        vectors.append(tuple(vec))
    return canonicalize(vectors, n, ctx)


def contains(a: CanonicalSubspace, v) -> bool:
    """Membership of a coordinate vector in the row span."""
    if len(v) != a.n:
        raise ValueError("vector length %d does not match ambient %d"
                         % (len(v), a.n))
    r = reduce_vector(a, v)
    return not any(r)


def reduce_vector(a: CanonicalSubspace, v):
    """Eliminate v against the echelon rows; zero iff v is in the span."""
    ctx = a.ctx
    mul, sub, inv = ctx.mul, ctx.sub, ctx.inv
    v = list(v)
    for row, p in zip(a.rows, a.pivots):
        c = v[p]
        if c:
            f = mul(c, inv(row[p]))
            v = [sub(x, mul(f, y)) if y else x for x, y in zip(v, row)]
    return v


def stacked_rank(a: CanonicalSubspace, b: CanonicalSubspace) -> int:
    """rank([A; B]), seeding elimination with A's echelon rows."""
    _check_ambient(a, b)
    ctx = a.ctx
    mul, sub, inv = ctx.mul, ctx.sub, ctx.inv
    extra = []          # rows independent of A, kept in echelon form
    extra_piv = []
    rank = a.k
    for brow in b.rows:
        v = reduce_vector(a, brow)
        for row, p in zip(extra, extra_piv):
            c = v[p]
            if c:
                f = mul(c, inv(row[p]))
                v = [sub(x, mul(f, y)) if y else x for x, y in zip(v, row)]
        lead = _leading(v)
        if lead is not None:
            extra.append(v)
            extra_piv.append(lead)
            rank += 1
    return rank


def intersection_dim(a: CanonicalSubspace, b: CanonicalSubspace) -> int:
    return a.k + b.k - stacked_rank(a, b)


def grassmann_adjacent(a: CanonicalSubspace, b: CanonicalSubspace) -> bool:
    """Adjacency in the Grassmann graph: equal dims meeting in dim k-1."""
    return a.k == b.k and stacked_rank(a, b) == a.k + 1


def projective_adjacent(a: CanonicalSubspace, b: CanonicalSubspace) -> bool:
    """Adjacency in the projective-space graph: containment, dims differ by 1."""
    lo, hi = (a, b) if a.k <= b.k else (b, a)
    return hi.k - lo.k == 1 and stacked_rank(hi, lo) == hi.k


def extend_subspace(base: CanonicalSubspace, v) -> CanonicalSubspace:
    """Canonical form of base + span(v) for v already reduced against base.

    v must be zero on base's pivot columns and independent of it; the new
    row slots between existing rows by its leading column.
    """
    lead = _leading(v)
    if lead is None or any(v[p] for p in base.pivots):
        raise ValueError("vector must be reduced against the base and nonzero")
    trail = max(i for i, c in enumerate(v) if c)
    if v[trail] != 1:
        ctx = base.ctx
        f = ctx.inv(v[trail])
        v = [ctx.mul(f, c) for c in v]
    pos = 0
    while pos < base.k and base.pivots[pos] < lead:
        pos += 1
    rows = base.rows[:pos] + (tuple(v),) + base.rows[pos:]
    pivots = base.pivots[:pos] + (lead,) + base.pivots[pos:]
    return CanonicalSubspace(base.ctx, base.n, rows, pivots)


def enumerate_subspaces(n: int, k: int, ctx: FieldContext):
    """All k-dim subspaces of GF(q)^n as canonical subspaces.

    Enumerated one reduced-echelon pattern at a time, so the total count is
    an independent subspace-count oracle.
    """
    if k == 0:
        yield trivial_subspace(n, ctx)
        return
    q = ctx.q
    for pivots in combinations(range(n), k):
        pivot_set = set(pivots)
        free_cells = [(i, c) for i in range(k)
                      for c in range(pivots[i] + 1, n) if c not in pivot_set]
        for values in product(range(q), repeat=len(free_cells)):
            grid = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                grid[i][p] = 1
            for (i, c), val in zip(free_cells, values):
                grid[i][c] = val
            rows = tuple(tuple(r) for r in grid)
            yield CanonicalSubspace(ctx, n, tau(rows, n, ctx), pivots)


def span_vectors(a: CanonicalSubspace):
    """Every vector of the subspace (q^k of them); brute-force oracle."""
    ctx, n = a.ctx, a.n
    add, mul = ctx.add, ctx.mul
    vectors = [tuple([0] * n)]
    for row in a.rows:
        new = []
        for c in range(1, ctx.q):
            scaled = tuple(mul(c, x) for x in row)
            for v in vectors:
                new.append(tuple(add(x, y) for x, y in zip(v, scaled)))
        vectors.extend(new)
    return vectors


def subspaces_of(a: CanonicalSubspace, k: int):
    """All k-dim subspaces contained in a, in deterministic order."""
    ctx = a.ctx
    add, mul = ctx.add, ctx.mul
    out = []
    for combo in enumerate_subspaces(a.k, k, ctx):
        vectors = []
        for crow in combo.rows:
            vec = [0] * a.n
            for c, arow in zip(crow, a.rows):
                if c:
                    vec = [add(x, mul(c, y)) for x, y in zip(vec, arow)]
            vectors.append(tuple(vec))
        out.append(canonicalize(vectors, a.n, ctx))
    return out


def superspaces_of(a: CanonicalSubspace, k: int):
    """All k-dim subspaces containing a (computed through duals)."""
    return [dual(s) for s in subspaces_of(dual(a), a.n - k)]


def pack_subspace(a: CanonicalSubspace) -> int:
    """Injective encoding of (k, entries) into one int, for distinctness sets."""
    q = a.ctx.q
    acc = a.k
    for row in a.rows:
        for x in row:
            acc = acc * q + x
    return acc


# -- textual format ---------------------------------------------------------
# first line "k n q", then k rows of n element indices.


def format_subspace(a: CanonicalSubspace) -> str:
    lines = ["%d %d %d" % (a.k, a.n, a.ctx.q)]
    for row in a.rows:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines)


def parse_subspace(text: str, ctx: FieldContext | None = None):
    """Parse the textual format; any basis is accepted and canonicalized.

    Returns (subspace, was_canonical).
    """
    from .field import field_from_order
    lines = [ln for ln in text.strip().splitlines()]
    if not lines:
        raise ValueError("empty subspace block")
    header = lines[0].split()
    if len(header) != 3:
        raise ValueError("subspace header must be 'k n q'")
    k, n, q = (int(x) for x in header)
    if ctx is None:
        ctx = field_from_order(q)
    elif ctx.q != q:
        raise ValueError("field mismatch: header q=%d, context q=%d"
                         % (q, ctx.q))
    if len(lines) != k + 1:
        raise ValueError("expected %d rows, got %d" % (k, len(lines) - 1))
    rows = []
    for ln in lines[1:]:
        row = tuple(int(x) for x in ln.split())
        if len(row) != n or any(not 0 <= x < q for x in row):
            raise ValueError("bad subspace row %r" % (ln,))
        rows.append(row)
    sub = canonicalize(rows, n, ctx)
    if sub.k != k:
        raise ValueError("stated dimension %d but rank is %d" % (k, sub.k))
    return sub, sub.rows == tuple(rows)
