"""Subspace Gray codes in the projective-space graph P_q(n).

For even n no optimal code exists; nonexistence_certificate evaluates the
counting argument exactly.  For n = 1, 3, 5 cyclic optimal codes are
constructed: the middle levels are covered by expanding a short necklace
path under multiplication by a primitive element of GF(q^n), and the
trivial and full spaces are spliced in by local subsequence reversals.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from math import gcd

from .field import FieldContext, digits_of, primitive_element, undigits
from .linalg import (CanonicalSubspace, canonicalize, enumerate_subspaces,
                     full_subspace, intersect, pack_subspace,
                     projective_adjacent, subspace_sum, subspaces_of,
                     superspaces_of, trivial_subspace, format_subspace,
                     parse_subspace)
from .qcombin import gaussian, q_number


@dataclass(frozen=True)
class SubspaceSequence:
    """A mixed-dimension subspace listing, adjacent in P_q(n)."""
    n: int
    q: int
    items: tuple
    cyclic: bool

    def __len__(self):
        return len(self.items)


@dataclass(frozen=True)
class Necklace:
    """An orbit of subspaces under multiplication by a primitive element."""
    representative: CanonicalSubspace
    orbit: tuple
    size: int


@dataclass(frozen=True)
class NecklacePath:
    """Alternating distinct-necklace reps X_0,Y_0,...,X_{s-1},Y_{s-1}.

    ell is the closing exponent: alpha^ell X_0 is contained in Y_{s-1} and
    gcd(ell, orbit size) = 1.
    """
    reps: tuple
    ell: int


# ---------------------------------------------------------------------------
# Nonexistence for even n.


@dataclass(frozen=True)
class NonexistenceReport:
    n: int
    q: int
    middle_count: int
    neighbor_count: int
    deficit: int
    ratio_identity_ok: bool
    cyclic_excluded: bool
    noncyclic_excluded: bool


def nonexistence_certificate(n: int, q: int) -> NonexistenceReport:
    """Exact counting argument against optimal codes for even n.

    Every middle-dimension subspace needs a neighbor one level up or down,
    so an optimal code requires [2m m+1]_q + [2m m-1]_q to reach
    [2m m]_q; the deficit is strictly positive, and at least 2 except at
    (n, q) = (2, 2), which only rules out the cyclic variant there.
    """
    if n < 2 or n % 2:
        raise ValueError("certificate applies to even n >= 2")
    m = n // 2
    middle = gaussian(n, m, q)
    up = gaussian(n, m + 1, q)
    down = gaussian(n, m - 1, q)
    neighbors = up + down
    # [2m m]_q / (2 [2m m-1]_q) = (q^(m+1)-1) / (2 (q^m-1)), cross-multiplied
    ratio_ok = (up == down
                and middle * 2 * (q ** m - 1)
                == neighbors * (q ** (m + 1) - 1))
    deficit = middle - neighbors
    return NonexistenceReport(n, q, middle, neighbors, deficit, ratio_ok,
                              deficit >= 1, deficit >= 2)


def fixture_code_2_2() -> SubspaceSequence:
    """The optimal non-cyclic (2;2)-subspace code, listed explicitly."""
    from .field import make_field
    ctx = make_field(2, 1)
    items = (canonicalize([(1, 0)], 2, ctx),
             trivial_subspace(2, ctx),
             canonicalize([(0, 1)], 2, ctx),
             full_subspace(2, ctx),
             canonicalize([(1, 1)], 2, ctx))
    return SubspaceSequence(2, 2, items, False)


# ---------------------------------------------------------------------------
# Necklaces: W^n identified with GF(q^n), orbits under a primitive element.


def _ground(ctx_qn: FieldContext):
    base = ctx_qn.base
    if base is None or ctx_qn.degree < 2:
        raise ValueError("need an extension field context GF(q^n)")
    return base


def multiply_subspace(sub: CanonicalSubspace, ctx_qn: FieldContext,
                      elem: int) -> CanonicalSubspace:
    """The subspace {elem * w}, with rows read as GF(q^n) elements."""
    ground = _ground(ctx_qn)
    q = ground.q
    n = ctx_qn.degree
    if sub.n != n:
        raise ValueError("ambient dimension does not match the extension")
    rows = [digits_of(ctx_qn.mul(undigits(r, q), elem), q, n)
            for r in sub.rows]
    return canonicalize(rows, n, ground)


def orbit_of(sub: CanonicalSubspace, ctx_qn: FieldContext, alpha: int):
    orbit = [sub]
    cur = multiply_subspace(sub, ctx_qn, alpha)
    while cur != sub:
        orbit.append(cur)
        cur = multiply_subspace(cur, ctx_qn, alpha)
    return orbit


def necklace_decompose(n: int, dim: int, ctx_qn: FieldContext):
    """All necklaces of dim-dimensional subspaces of GF(q)^n."""
    ground = _ground(ctx_qn)
    if ctx_qn.degree != n:
        raise ValueError("extension degree %d != ambient %d"
                         % (ctx_qn.degree, n))
    alpha = primitive_element(ctx_qn).index
    seen = set()
    necklaces = []
    for sub in enumerate_subspaces(n, dim, ground):
        if pack_subspace(sub) in seen:
            continue
        orbit = orbit_of(sub, ctx_qn, alpha)
        for member in orbit:
            seen.add(pack_subspace(member))
        rep = min(orbit, key=lambda s: s.rows)
        necklaces.append(Necklace(rep, tuple(orbit), len(orbit)))
    necklaces.sort(key=lambda nk: nk.representative.rows)
    return necklaces


# ---------------------------------------------------------------------------
# Path search for the middle levels, n in {3, 5}.


def _contained_candidates(y, necklaces, used, index_of):
    """Members of unused necklaces lying inside y, deterministic order."""
    out = []
    for sub in subspaces_of(y, y.k - 1):
        i = index_of.get(pack_subspace(sub))
        if i is not None and i not in used:
            out.append((i, sub))
    out.sort(key=lambda t: (t[0], t[1].rows))
    return out


def _containing_candidates(x, necklaces, used, index_of):
    out = []
    for sub in superspaces_of(x, x.k + 1):
        i = index_of.get(pack_subspace(sub))
        if i is not None and i not in used:
            out.append((i, sub))
    out.sort(key=lambda t: (t[0], t[1].rows))
    return out


def search_necklace_path(n: int, ctx_qn: FieldContext) -> NecklacePath:
    """Deterministic backtracking for the middle-levels necklace path."""
    if n not in (3, 5):
        raise ValueError("path search is implemented for n in {3, 5}")
    ground = _ground(ctx_qn)
    q = ground.q
    m = (n - 1) // 2
    lower = necklace_decompose(n, m, ctx_qn)
    upper = necklace_decompose(n, m + 1, ctx_qn)
    s = len(lower)
    assert len(upper) == s
    size = q_number(n, q)
    alpha = primitive_element(ctx_qn).index
    lower_index = {}
    for i, nk in enumerate(lower):
        for member in nk.orbit:
            lower_index[pack_subspace(member)] = i
    upper_index = {}
    for i, nk in enumerate(upper):
        for member in nk.orbit:
            upper_index[pack_subspace(member)] = i

    x0 = lower[0].representative
    path = [x0]
    used_lower = {0}
    used_upper = set()

    def close(y_last):
        cur = x0
        for ell in range(1, size):
            cur = multiply_subspace(cur, ctx_qn, alpha)
            if gcd(ell, size) == 1 and projective_adjacent(cur, y_last):
                return ell
        return None

    def extend():
        if len(path) == 2 * s:
            return close(path[-1]) is not None
        if len(path) % 2 == 1:
            cands = _containing_candidates(path[-1], upper,
                                           used_upper, upper_index)
            used = used_upper
        else:
            cands = _contained_candidates(path[-1], lower,
                                          used_lower, lower_index)
            used = used_lower
        for i, sub in cands:
            used.add(i)
            path.append(sub)
            if extend():
                return True
            path.pop()
            used.discard(i)
        return False

    if not extend():
        raise RuntimeError("necklace path search exhausted at n=%d q=%d; "
                           "this contradicts the middle-levels existence "
                           "result" % (n, q))
    return NecklacePath(tuple(path), close(path[-1]))


def expand_path(path: NecklacePath, ctx_qn: FieldContext) -> SubspaceSequence:
    """Concatenate L, alpha^ell L, ..., alpha^((N-1) ell) L."""
    ground = _ground(ctx_qn)
    n = ctx_qn.degree
    alpha = primitive_element(ctx_qn).index
    sizes = {len(orbit_of(r, ctx_qn, alpha)) for r in path.reps}
    if len(sizes) != 1:
        raise ValueError("visited necklaces have unequal orbit sizes")
    size = sizes.pop()
    step = ctx_qn.pow(alpha, path.ell)
    items = list(path.reps)
    block = list(path.reps)
    for _ in range(size - 1):
        block = [multiply_subspace(sub, ctx_qn, step) for sub in block]
        items.extend(block)
    return SubspaceSequence(n, ground.q, tuple(items), True)


# ---------------------------------------------------------------------------
# Full-space constructions for n = 1, 3, 5.


def build_full_n1(ctx: FieldContext) -> SubspaceSequence:
    items = (trivial_subspace(1, ctx), full_subspace(1, ctx))
    return SubspaceSequence(1, ctx.q, items, True)


def _check_tower(ctx, ctx_qn, n):
    if ctx_qn.base is not ctx:
        raise ValueError("ctx_qn must extend ctx")
    if ctx_qn.degree != n:
        raise ValueError("ctx_qn must have degree %d" % n)


def build_full_n3(ctx: FieldContext, ctx_qn: FieldContext) -> SubspaceSequence:
    """Middle levels plus W^0 and W^3 spliced at odd position 1."""
    _check_tower(ctx, ctx_qn, 3)
    mid = expand_path(search_necklace_path(3, ctx_qn), ctx_qn).items
    assert mid[0].k == 1
    items = (trivial_subspace(3, ctx), mid[0], mid[1], full_subspace(3, ctx))
    items += tuple(mid[p] for p in range(len(mid) - 1, 1, -1))
    return SubspaceSequence(3, ctx.q, items, True)


def build_full_n5(ctx: FieldContext, ctx_qn: FieldContext) -> SubspaceSequence:
    """The (5;q) construction: reversal splicing around the first blocks."""
    _check_tower(ctx, ctx_qn, 5)
    path = search_necklace_path(5, ctx_qn)
    xs = list(path.reps[0::2])
    ys = list(path.reps[1::2])
    s = len(xs)
    ell = path.ell
    alpha = primitive_element(ctx_qn).index
    step = ctx_qn.pow(alpha, ell)
    size = q_number(5, ctx.q)

    def shift(sub):
        return multiply_subspace(sub, ctx_qn, step)

    meet = intersect(xs[0], xs[1])
    join = subspace_sum(ys[0], ys[1])
    assert meet.k == 1 and join.k == 4

    # L' = X_0, X_0^X_1, X_1, Y_0, Y_0+Y_1, Y_1, X_2, Y_2, ..., X_{s-1}, Y_{s-1}
    lprime = [xs[0], meet, xs[1], ys[0], join, ys[1]]
    for i in range(2, s):
        lprime.extend((xs[i], ys[i]))

    # L* replaces the first two blocks of the expansion
    lstar = [xs[0], meet, trivial_subspace(5, ctx), shift(meet), shift(xs[0])]
    for i in range(s - 1, 0, -1):
        lstar.extend((ys[i], xs[i]))
    lstar.extend((ys[0], join, full_subspace(5, ctx), shift(join),
                  shift(ys[0])))
    for i in range(1, s):
        lstar.extend((shift(xs[i]), shift(ys[i])))

    items = list(lstar)
    block = [shift(sub) for sub in lprime]
    for _ in range(2, size):
        block = [shift(sub) for sub in block]
        items.extend(block)
    return SubspaceSequence(5, ctx.q, tuple(items), True)


# ---------------------------------------------------------------------------
# Verification and file IO.


@dataclass
class SubspaceReport:
    n: int
    q: int
    cyclic: bool
    size: int
    expected_size: int
    duplicates: int
    adjacency_failures: int
    wraparound_ok: bool | None
    failures: list = dfield(default_factory=list)

    @property
    def optimal(self) -> bool:
        return self.size == self.expected_size

    @property
    def passed(self) -> bool:
        return not self.failures

def verify_subspace(s: SubspaceSequence,
                    require_optimal: bool = True) -> SubspaceReport:
    """Check distinctness, P_q(n) adjacency and (optionally) optimality."""
    seen = set()
    duplicates = 0
    adjacency_failures = 0
    items = s.items
    for item in items:
        key = pack_subspace(item)
        if key in seen:
            duplicates += 1
        seen.add(key)
    for a, b in zip(items, items[1:]):
        if not projective_adjacent(a, b):
            adjacency_failures += 1
    wraparound_ok = None
    if s.cyclic and len(items) > 1:
        wraparound_ok = projective_adjacent(items[-1], items[0])
    expected = sum(gaussian(s.n, k, s.q) for k in range(s.n + 1))
    failures = []
    if duplicates:
        failures.append("%d duplicate subspaces" % duplicates)
    if adjacency_failures:
        failures.append("%d consecutive pairs not adjacent"
                        % adjacency_failures)
    if wraparound_ok is False:
        failures.append("last and first items not adjacent")
    if require_optimal and len(items) != expected:
        failures.append("size %d != total subspace count %d"
                        % (len(items), expected))
    return SubspaceReport(s.n, s.q, s.cyclic, len(items), expected,
                          duplicates, adjacency_failures, wraparound_ok,
                          failures)


def write_proj_file(f, s: SubspaceSequence):
    f.write("PROJ %d %d %d %d\n" % (s.n, s.q, len(s.items),
                                    1 if s.cyclic else 0))
    for item in s.items:
        f.write("\n")
        f.write(format_subspace(item))
        f.write("\n")


def read_proj_file(f) -> SubspaceSequence:
    from .field import field_from_order
    text = f.read()
    chunks = [c for c in text.split("\n\n") if c.strip()]
    header = chunks[0].splitlines()[0].split()
    if len(header) != 5 or header[0] != "PROJ":
        raise ValueError("not a PROJ file")
    n, q, count, cyc = (int(x) for x in header[1:])
    if chunks[0].splitlines()[1:]:
        raise ValueError("malformed PROJ header block")
    ctx = field_from_order(q)
    items = []
    for chunk in chunks[1:]:
        sub, _ = parse_subspace(chunk, ctx)
        items.append(sub)
    if len(items) != count:
        raise ValueError("PROJ file: expected %d blocks, found %d"
                         % (count, len(items)))
    return SubspaceSequence(n, q, tuple(items), bool(cyc))
