"""Exact arithmetic in small finite fields GF(p^m), with a fixed element order.

Elements are addressed by their index in [0, q): the element with index i has
the base-p digit expansion of i as its coefficient vector in the polynomial
basis of the field modulus (low digit = constant term).  Index 0 is the zero
element, index 1 is one.  The index therefore doubles as the rho-value used
whenever elements are serialized.

A FieldContext performs arithmetic directly on indices (`ctx.add`, `ctx.mul`,
...); this is the fast path used by the matrix and Gray-code machinery.
FieldElement wraps an index with operator overloads for convenience.

Extension fields can be built over any existing context (`extend_field`),
which is how GF(q^n) is realized as a degree-n extension of GF(q): its
elements are then in natural bijection with length-n coordinate vectors
over GF(q).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

_DEFAULT_MAX_Q = 65536
_TABLE_LIMIT = 64  # full op tables are precomputed up to this field size


def max_field_size() -> int:
    """Size cap for constructed fields, overridable via GRAY_MAX_Q."""
    try:
        return int(os.environ.get("GRAY_MAX_Q", _DEFAULT_MAX_Q))
    except ValueError:
        return _DEFAULT_MAX_Q


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending (trial division)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def digits_of(value: int, base: int, length: int) -> tuple[int, ...]:
    digs = []
    for _ in range(length):
        value, r = divmod(value, base)
        digs.append(r)
    return tuple(digs)


def undigits(digs, base: int) -> int:
    value = 0
    for d in reversed(digs):
        value = value * base + d
    return value


# ---------------------------------------------------------------------------
# Polynomial arithmetic over an arbitrary coefficient context.
# Polynomials are lists of element indices, low-to-high, not necessarily
# trimmed; the coefficient context only needs add/sub/mul/inv and q.


def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    mul, add = F.mul, F.add
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] = add(out[i + j], mul(ai, bj))
    return _ptrim(out)


def _pmod(F, a, f):
    """a mod f for monic f."""
    a = list(a)
    _ptrim(a)
    d = len(f) - 1
    sub, mul = F.sub, F.mul
    while len(a) > d:
        lead = a[-1]
        shift = len(a) - 1 - d
        if lead:
            for i in range(d):
                if f[i]:
                    a[shift + i] = sub(a[shift + i], mul(lead, f[i]))
        a.pop()
        _ptrim(a)
    return a


def _ppowmod(F, a, e, f):
    result = [1]
    base = _pmod(F, a, f)
    while e:
        if e & 1:
            result = _pmod(F, _pmul(F, result, base), f)
        base = _pmod(F, _pmul(F, base, base), f)
        e >>= 1
    return result


def _pgcd(F, a, b):
    a = _ptrim(list(a))
    b = _ptrim(list(b))
    while b:
        inv_lead = F.inv(b[-1])
        bm = [F.mul(c, inv_lead) for c in b]
        a, b = b, _pmod(F, a, bm)
    return a


def _is_irreducible(F, f, deg: int) -> bool:
    """Irreducibility of monic f of degree deg over the coefficient field F."""
    if deg == 1:
        return True
    x = [0, 1]
    if _ptrim(list(_ppowmod(F, x, F.q ** deg, f))) != x:
        return False
    for r in prime_factors(deg):
        h = _ppowmod(F, x, F.q ** (deg // r), f)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = F.sub(diff[1], 1)
        if len(_pgcd(F, diff, f)) > 1:  # shared factor of degree >= 1
            return False
    return True


def _first_irreducible(base, deg: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of given degree over base."""
    for t in range(base.q ** deg):
        f = list(digits_of(t, base.q, deg)) + [1]
        if _is_irreducible(base, f, deg):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # impossible


# ---------------------------------------------------------------------------


class FieldContext:
    """A finite field GF(p^m) operating on element indices.

    Attributes:
      p        characteristic
      q        field size
      m        degree over the prime field
      degree   degree over the immediate base field
      base     immediate base context (None for prime fields)
      modulus  monic modulus polynomial over the base, low-to-high indices
    """

    __slots__ = ("p", "q", "m", "degree", "base", "modulus",
                 "add", "sub", "mul", "neg", "inv", "_prim")

    def __init__(self, p=None, base=None, degree=1, modulus=None):
        self._prim = None
        if base is None:
            self.p = p
            self.q = p
            self.m = 1
            self.degree = 1
            self.base = None
            self.modulus = (0, 1)
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.neg = lambda a: (-a) % p
            self.mul = lambda a, b: (a * b) % p
            self.inv = self._prime_inv
        else:
            self.base = base
            self.degree = degree
            self.p = base.p
            self.q = base.q ** degree
            self.m = base.m * degree
            self.modulus = tuple(modulus)
            self._init_extension_ops()

    def _prime_inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return pow(a, self.p - 2, self.p)

    def _init_extension_ops(self):
        base, deg, q = self.base, self.degree, self.q
        bq = base.q
        modulus = list(self.modulus)

        def to_poly(a):
            return list(digits_of(a, bq, deg))

        def from_poly(pol):
            out = 0
            for i in range(deg - 1, -1, -1):
                out = out * bq + (pol[i] if i < len(pol) else 0)
            return out

        def gen_mul(a, b):
            return from_poly(_pmod(base, _pmul(base, to_poly(a), to_poly(b)),
                                   modulus))

        if self.p == 2:
            self.add = lambda a, b: a ^ b
            self.sub = lambda a, b: a ^ b
            self.neg = lambda a: a
        else:
            badd, bsub, bneg = base.add, base.sub, base.neg

            def gen_add(a, b):
                return from_poly([badd(x, y)
                                  for x, y in zip(to_poly(a), to_poly(b))])

            def gen_sub(a, b):
                return from_poly([bsub(x, y)
                                  for x, y in zip(to_poly(a), to_poly(b))])

            def gen_neg(a):
                return from_poly([bneg(x) for x in to_poly(a)])

            if q <= _TABLE_LIMIT:
                add_t = [gen_add(a, b) for a in range(q) for b in range(q)]
                neg_t = [gen_neg(a) for a in range(q)]
                self.add = lambda a, b: add_t[a * q + b]
                self.sub = lambda a, b: add_t[a * q + neg_t[b]]
                self.neg = lambda a: neg_t[a]
            else:
                self.add = gen_add
                self.sub = gen_sub
                self.neg = gen_neg

        if q <= _TABLE_LIMIT:
            mul_t = [gen_mul(a, b) for a in range(q) for b in range(q)]
            inv_t = [0] * q
            for a in range(1, q):
                for b in range(1, q):
                    if mul_t[a * q + b] == 1:
                        inv_t[a] = b
                        break

            def table_inv(a):
                if a == 0:
                    raise ZeroDivisionError(
                        "inverse of zero in GF(%d)" % q)
                return inv_t[a]

            self.mul = lambda a, b: mul_t[a * q + b]
            self.inv = table_inv
        else:
            def gen_inv(a):
                if a == 0:
                    raise ZeroDivisionError(
                        "inverse of zero in GF(%d)" % q)
                return self.pow(a, q - 2)

            self.mul = gen_mul
            self.inv = gen_inv

    # -- generic helpers ----------------------------------------------------

    def pow(self, a: int, e: int) -> int:
        result = 1
        e = int(e)
        if e < 0:
            a = self.inv(a)
            e = -e
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def coeffs(self, index: int) -> tuple[int, ...]:
        """Base-p coefficient vector of the element with the given index."""
        return digits_of(index, self.p, self.m)

    def from_coeffs(self, coeffs) -> int:
        return undigits([c % self.p for c in coeffs], self.p)

    def primitive_index(self) -> int:
        """Index of the least element of multiplicative order q - 1."""
        if self._prim is None:
            t = self.q - 1
            fac = prime_factors(t)
            for i in range(1, self.q):
                if all(self.pow(i, t // r) != 1 for r in fac):
                    self._prim = i
                    break
        return self._prim

    def name(self) -> str:
        return str(self.p) if self.m == 1 else "%d^%d" % (self.p, self.m)

    def __repr__(self):
        return "FieldContext(GF(%s))" % self.name()


@dataclass(frozen=True)
class FieldElement:
    """A field element: a context plus its index alpha_i."""
    ctx: FieldContext
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.ctx.q:
            raise ValueError("element index %d out of range for GF(%d)"
                             % (self.index, self.ctx.q))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.index)

    def _check(self, other) -> "FieldElement":
        if not isinstance(other, FieldElement) or other.ctx is not self.ctx:
            raise ValueError("mixed-context field operands")
        return other

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.index,
                                                   self._check(other).index))

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.index,
                                                   self._check(other).index))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.index,
                                                   self._check(other).index))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.index))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.index, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.index))

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __bool__(self):
        return self.index != 0


@lru_cache(maxsize=None)
def make_field(p: int, m: int) -> FieldContext:
    """GF(p^m) with the lexicographically least irreducible monic modulus.

    Identical (p, m) always return the same (cached) context.
    """
    if not is_prime(p):
        raise ValueError("field characteristic %r is not prime" % (p,))
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if p ** m > max_field_size():
        raise ValueError("field size %d exceeds bound %d"
                         % (p ** m, max_field_size()))
    if m == 1:
        return FieldContext(p=p)
    base = make_field(p, 1)
    return FieldContext(base=base, degree=m,
                        modulus=_first_irreducible(base, m))


@lru_cache(maxsize=None)
def extend_field(ctx: FieldContext, degree: int) -> FieldContext:
    """Degree-n extension of an existing field, GF(q) -> GF(q^n).

    Elements correspond to length-n coordinate vectors over the base field
    (low coordinate = constant term of the polynomial basis).
    """
    if degree < 1:
        raise ValueError("extension degree must be >= 1")
    if ctx.q ** degree > max_field_size():
        raise ValueError("field size %d exceeds bound %d"
                         % (ctx.q ** degree, max_field_size()))
    return FieldContext(base=ctx, degree=degree,
                        modulus=_first_irreducible(ctx, degree))


def field_from_order(q: int) -> FieldContext:
    """Field named by its size: q must be a prime power p^m."""
    if q < 2:
        raise ValueError("field order must be >= 2")
    p = prime_factors(q)[0]
    m = 0
    t = q
    while t % p == 0:
        t //= p
        m += 1
    if t != 1:
        raise ValueError("%d is not a prime power" % q)
    return make_field(p, m)


def parse_field_spec(spec: str) -> FieldContext:
    """Parse "q" or "p^m" into a field context."""
    spec = spec.strip()
    if "^" in spec:
        ps, ms = spec.split("^", 1)
        return make_field(int(ps), int(ms))
    return field_from_order(int(spec))


def element_by_index(ctx: FieldContext, i: int) -> FieldElement:
    if not 0 <= i < ctx.q:
        raise ValueError("index %d out of range for GF(%d)" % (i, ctx.q))
    return FieldElement(ctx, i)


def rho(e: FieldElement) -> int:
    """Position of an element in the fixed order alpha_0..alpha_{q-1}."""
    return e.index


def primitive_element(ctx: FieldContext) -> FieldElement:
    return FieldElement(ctx, ctx.primitive_index())
