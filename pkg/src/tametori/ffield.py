"""Explicit finite fields F_{p^m} with deterministic construction.

The modulus is the lexicographically smallest monic irreducible polynomial of
degree m (most significant coefficient compared first) and the generator is
the enumeration-smallest element of full multiplicative order, so discrete
logs are stable across runs.  Discrete-log tables are built eagerly at
construction; descriptors are immutable afterwards.

Elements are packed integers: sum(c_i * p**i) for the coefficient vector
(c_0, ..., c_{m-1}).
"""

from __future__ import annotations

from .qz import RootOfUnity, quad_char_cyclic

ARITH_CAP = 10 ** 6   # largest field with full arithmetic + dlog table
ENUM_CAP = 10 ** 4    # largest field for full-enumeration oracles

_FIELD_CACHE: dict = {}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FField:
    """Descriptor for F_{p^m}; construct through :func:`build_field`."""

    def __init__(self, p: int, m: int):
        if not _is_prime(p) or p == 2:
            raise ValueError(f"p must be an odd prime, got {p}")
        if m < 1:
            raise ValueError("m must be positive")
        q = p ** m
        if q > ARITH_CAP:
            raise ValueError(f"field size {q} exceeds the arithmetic cap {ARITH_CAP}")
        self.p = p
        self.m = m
        self.q = q
        self.modulus = self._find_modulus()
        # x^(m+k) mod modulus for k = 0..m-2, used in multiplication
        self._xpow = self._high_power_rows()
        self._tr_basis = None
        self.generator = self._find_generator()
        self._build_tables()
        self._tr_basis = tuple(self._trace_slow(self._basis_elt(i)) for i in range(m))

    # -- construction ------------------------------------------------------

    def _find_modulus(self) -> tuple:
        p, m = self.p, self.m
        if m == 1:
            return (0, 1)
        for enc in range(p ** m):
            tail = [(enc // p ** i) % p for i in range(m)]
            poly = tuple(tail) + (1,)
            if self._irreducible(poly):
                return poly
        raise AssertionError("no irreducible polynomial found")

    def _irreducible(self, poly: tuple) -> bool:
        # trial division by every monic polynomial of degree 1..m//2
        p, m = self.p, self.m
        for d in range(1, m // 2 + 1):
            for enc in range(p ** d):
                div = tuple((enc // p ** i) % p for i in range(d)) + (1,)
                if not any(self._poly_rem(poly, div)):
                    return False
        return True

    def _poly_rem(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        a = list(a)
        db = len(b) - 1
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i] % p
            if c:
                for j in range(db + 1):
                    a[i - db + j] = (a[i - db + j] - c * b[j]) % p
        return tuple(x % p for x in a[:db])

    def _high_power_rows(self) -> tuple:
        p, m = self.p, self.m
        rows = []
        cur = tuple((-self.modulus[i]) % p for i in range(m))  # x^m
        rows.append(cur)
        for _ in range(m - 2):
            shifted = (0,) + cur[:-1]
            top = cur[-1]
            cur = tuple((shifted[i] + top * rows[0][i]) % p for i in range(m))
            rows.append(cur)
        return tuple(rows)

    def _find_generator(self) -> int:
        facs = _prime_factors(self.q - 1)
        for cand in range(2, self.q):
            if all(self.pow(cand, (self.q - 1) // r) != 1 for r in facs):
                return cand
        raise AssertionError("no generator found")

    def _build_tables(self):
        q = self.q
        exp = [0] * (q - 1)
        dlog = [-1] * q
        cur = 1
        for k in range(q - 1):
            exp[k] = cur
            dlog[cur] = k
            cur = self.mul(cur, self.generator)
        if cur != 1:
            raise AssertionError("generator order is not q-1")
        self._exp = exp
        self._dlog = dlog

    # -- element encoding ----------------------------------------------------

    def coeffs(self, x: int) -> tuple:
        p = self.p
        return tuple((x // p ** i) % p for i in range(self.m))

    def from_coeffs(self, cs) -> int:
        if len(cs) != self.m:
            raise ValueError(f"need {self.m} coefficients")
        return sum((c % self.p) * self.p ** i for i, c in enumerate(cs))

    def from_int(self, n: int) -> int:
        """The image of a rational integer in the prime subfield."""
        return n % self.p

    def _basis_elt(self, i: int) -> int:
        return self.p ** i

    # -- arithmetic ----------------------------------------------------------

    def add(self, x: int, y: int) -> int:
        p = self.p
        return self.from_coeffs(tuple((a + b) % p for a, b in
                                      zip(self.coeffs(x), self.coeffs(y))))

    def mul(self, x: int, y: int) -> int:
        p, m = self.p, self.m
        if m == 1:
            return (x * y) % p
        a = self.coeffs(x)
        b = self.coeffs(y)
        conv = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] += ai * bj
        res = [c % p for c in conv[:m]]
        for k in range(m - 1):
            c = conv[m + k] % p
            if c:
                row = self._xpow[k]
                for i in range(m):
                    res[i] = (res[i] + c * row[i]) % p
        return sum(res[i] * p ** i for i in range(m))

    def pow(self, x: int, n: int) -> int:
        if n < 0:
            return self.pow(self.pow(x, self.q - 2), -n)
        r = 1
        b = x
        while n:
            if n & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            n >>= 1
        return r

    def _trace_slow(self, x: int) -> int:
        acc = x
        cur = x
        for _ in range(self.m - 1):
            cur = self.pow(cur, self.p)
            acc = self.add(acc, cur)
        cs = self.coeffs(acc)
        if any(cs[1:]):
            raise AssertionError("trace landed outside the prime field")
        return cs[0]

    def trace_to_prime(self, x: int) -> int:
        """Trace down to F_p: sum of x**(p**j) for j < m, as an int in [0, p)."""
        if self._tr_basis is None:
            return self._trace_slow(x)
        cs = self.coeffs(x)
        return sum(c * t for c, t in zip(cs, self._tr_basis)) % self.p

    def discrete_log(self, x: int) -> int:
        """The k in [0, q-1) with generator**k == x; x must be nonzero."""
        if x % self.q == 0:
            raise ValueError("discrete log of zero")
        return self._dlog[x % self.q]

    def element_from_exponent(self, k: int) -> int:
        return self._exp[k % (self.q - 1)]

    def unit_as_root(self, x: int) -> RootOfUnity:
        """A unit as a root of unity: exponent dlog(x)/(q-1) over the generator."""
        return RootOfUnity.make(self.discrete_log(x), self.q - 1)

    def __repr__(self):
        return f"FField(p={self.p}, m={self.m}, modulus={self.modulus}, gen={self.generator})"


def build_field(p: int, m: int) -> FField:
    """Deterministic descriptor of F_{p^m}; results are cached per (p, m)."""
    key = (p, m)
    fld = _FIELD_CACHE.get(key)
    if fld is None:
        fld = FField(p, m)
        _FIELD_CACHE[key] = fld
    return fld


def mult_perm_sign(field: FField, u_exponent: int) -> int:
    """Signature of the permutation x -> u*x of the whole field, where
    u = generator**u_exponent, by explicit cycle decomposition.

    This is the brute-force counterpart of the quadratic character of the
    unit group and deliberately avoids it.
    """
    if field.q > ENUM_CAP:
        raise ValueError(f"field size {field.q} exceeds the enumeration cap {ENUM_CAP}")
    u = field.element_from_exponent(u_exponent)
    q = field.q
    seen = bytearray(q)
    seen[0] = 1  # zero is fixed
    transpositions = 0
    for start in range(1, q):
        if seen[start]:
            continue
        length = 0
        cur = start
        while not seen[cur]:
            seen[cur] = 1
            cur = field.mul(u, cur)
            length += 1
        transpositions += length - 1
    return -1 if transpositions % 2 else 1


def norm_one_quad_char(q_prime: int, beta: RootOfUnity) -> int:
    """Quadratic character of the norm-one subgroup of a quadratic extension
    of a field with q_prime elements, at beta: beta**((q_prime+1)/2).

    beta must lie in the norm-one subgroup, i.e. have order dividing q_prime+1.
    """
    if (q_prime + 1) % beta.order:
        raise ValueError(f"{beta} is not in the norm-one subgroup over F_{q_prime}")
    return (beta ** ((q_prime + 1) // 2)).sign()
