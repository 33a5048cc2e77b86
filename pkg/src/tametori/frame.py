"""Galois frame for a tame degree-ef extension E/F, modeled in Q/Z.

A datum (p, a, e, f, t) fixes q = p**a, a generator of mu_E (the primitive
(q^f - 1)-th root of unity 1/(q^f - 1)), uniformizers with
pi_E**e = zeta_{E/F} * pi_F and zeta_{E/F} = generator**t.  The ambient
Galois group acts through two generators:

    sigma: fixes roots of unity, pi_E -> zeta_e * pi_E
    phi:   raises roots of unity to the q-th power, pi_E -> zeta_phi * pi_E

with phi * sigma * phi^(-1) = sigma**q, and the stabilizer of E is generated
by sigma**c * phi**f where c = -t (mod e).  Cosets sigma^k phi^i with
0 <= k < e, 0 <= i < f enumerate the degree-n embedding set; ordered pairs of
distinct cosets are the roots of the associated torus, and this module
classifies their orbits.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import NamedTuple, Optional

from .ffield import _is_prime
from .qz import RootOfUnity

ORBIT_N_CAP = 12

ASYMMETRIC = "asymmetric"
SYM_UNRAMIFIED = "sym-unramified"
SYM_RAMIFIED = "sym-ramified"


class CosetRep(NamedTuple):
    """Normalized representative sigma^k phi^i, 0 <= k < e, 0 <= i < f."""

    k: int
    i: int

    @property
    def key(self):
        return (self.i, self.k)


class Root(NamedTuple):
    """The root attached to an ordered pair of distinct cosets."""

    src: CosetRep
    dst: CosetRep


@dataclass(frozen=True)
class FieldDatum:
    """Parameter pack for a tame degree-ef extension with q = p**a."""

    p: int
    a: int
    e: int
    f: int
    t: int

    def __post_init__(self):
        if not _is_prime(self.p) or self.p == 2:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.a < 1 or self.e < 1 or self.f < 1:
            raise ValueError("a, e, f must be positive")
        if gcd(self.e, self.p) != 1:
            raise ValueError(f"tameness requires p does not divide e (p={self.p}, e={self.e})")
        object.__setattr__(self, "t", self.t % self.mu_order)
        # sigma^c phi^f must fix both mu_E and pi_E
        if not unif_multiplier(self, CosetRep(self.c, 0), raw_i=self.f).is_one():
            raise AssertionError("stabilizer generator fails to fix the uniformizer")

    @property
    def q(self) -> int:
        return self.p ** self.a

    @property
    def n(self) -> int:
        return self.e * self.f

    @property
    def mu_order(self) -> int:
        return self.q ** self.f - 1

    @property
    def c(self) -> int:
        return (-self.t) % self.e

    def key(self):
        return (self.p, self.a, self.e, self.f, self.t)


IDENTITY = CosetRep(0, 0)


def normalize(datum: FieldDatum, k_raw: int, i_raw: int) -> CosetRep:
    """Reduce sigma^k_raw phi^i_raw to its normalized coset representative.

    Uses phi^(f*t) * Gamma_E = sigma^(-c*T_t) * Gamma_E with
    T_t = 1 + q^f + ... + q^(f(t-1)) taken mod e (and the inverse sum for
    negative t).
    """
    e, f, q, c = datum.e, datum.f, datum.q, datum.c
    i0 = i_raw % f
    t = (i_raw - i0) // f
    T = 0
    if t >= 0:
        b, qf = 1, pow(q, f, e) if e > 1 else 0
        for _ in range(t):
            T = (T + b) % e
            b = (b * qf) % e
    else:
        qfinv = pow(q, -f, e) if e > 1 else 0
        b = qfinv
        for _ in range(-t):
            T = (T - b) % e
            b = (b * qfinv) % e
    k = (k_raw - c * pow(q, i0, e) * T) % e if e > 1 else 0
    return CosetRep(k, i0)


def left_act(datum: FieldDatum, g: tuple, rep: CosetRep) -> CosetRep:
    """Normalized coset of (sigma^k1 phi^i1) * rep, for a raw word g = (k1, i1)."""
    k1, i1 = g
    e, q = datum.e, datum.q
    qi = pow(q, i1, e) if e > 1 else 0
    return normalize(datum, k1 + qi * rep.k, i1 + rep.i)


def unif_multiplier(datum: FieldDatum, rep: CosetRep, raw_i: Optional[int] = None) -> RootOfUnity:
    """The root of unity u with g(pi_E) = u * pi_E for g = sigma^k phi^i:
    exponent k/e + t*(q^i - 1)/(e*(q^f - 1))."""
    i = rep.i if raw_i is None else raw_i
    num_extra = datum.t * (datum.q ** i - 1)
    return RootOfUnity.make(rep.k, datum.e) * RootOfUnity.make(num_extra, datum.e * datum.mu_order)


def _mult_order(base: int, modulus: int) -> int:
    if modulus == 1:
        return 1
    if gcd(base, modulus) != 1:
        raise ValueError("order undefined")
    o, cur = 1, base % modulus
    while cur != 1:
        cur = (cur * base) % modulus
        o += 1
    return o


def _xg_symmetric(datum: FieldDatum, g: CosetRep) -> tuple:
    """Symmetry criterion: does some x = (sigma^c phi^f)^r satisfy
    g * x * g in Gamma_E?  Returns (answer, witness r or None).

    The normalized coset of g*x_r*g depends on r only through three residues
    mod e that evolve by an invertible affine map, so the search terminates
    once the state repeats.
    """
    e, f, q, c = datum.e, datum.f, datum.q, datum.c
    if (2 * g.i) % f != 0:
        return False, None
    t0 = (2 * g.i) // f
    if e == 1:
        return True, 0
    qf = pow(q, f, e)
    qi = pow(q, g.i, e)
    K = 0            # sigma-exponent of x_r
    B = 1            # q^(f r) mod e
    T = t0 % e       # T_(r + t0); t0 is 0 or 1, T_1 = 1
    Bf = (B * pow(q, f * t0, e)) % e  # q^(f (r + t0)) mod e
    seen = set()
    r = 0
    while (K, B, T) not in seen:
        seen.add((K, B, T))
        k_norm = (g.k + qi * K + qi * B * g.k - c * T) % e
        if k_norm == 0:
            return True, r
        K = (K + c * B) % e
        T = (T + Bf) % e
        B = (B * qf) % e
        Bf = (Bf * qf) % e
        r += 1
    return False, None


@dataclass(frozen=True)
class OrbitClass:
    """A Galois orbit of roots with its classification and field data.

    ``alt_class`` is the alternative ramification convention keyed to the
    coset shape (sigma^k -> ramified, sigma^k phi^(f/2) -> unramified), as
    opposed to ``kind`` which follows the ramification of the stabilizer
    extension F_alpha / F_{+-alpha}.
    """

    datum: FieldDatum
    rep: CosetRep
    size: int
    kind: str
    alt_class: str
    partner: Optional[CosetRep]
    deg_f_alpha: int
    e_f_alpha: int
    f_f_alpha: int
    deg_f_pm_alpha: int
    alpha_of_unif: RootOfUnity
    alpha_unit_exponent_factor: int
    xg_witness_r: Optional[int]

    @property
    def residue_order_f_alpha(self) -> int:
        """|k_{F_alpha}| = q**f_f_alpha."""
        return self.datum.q ** self.f_f_alpha

    def alpha_value(self, unit_exponent: int, valuation: int) -> RootOfUnity:
        """alpha at generator**unit_exponent * pi_E**valuation: always a unit,
        returned as its root-of-unity part."""
        unit = RootOfUnity.make(unit_exponent * self.alpha_unit_exponent_factor,
                                self.datum.mu_order)
        return unit * (self.alpha_of_unif ** valuation)


def enumerate_orbits(datum: FieldDatum) -> tuple:
    """All Galois orbits of ordered coset pairs, classified.

    Orbits come back sorted by the (i, k) key of their canonical
    representative g (the smallest dst over pairs (identity, dst) in the
    orbit).  Both symmetry tests run on every orbit and must agree.
    """
    if datum.n > ORBIT_N_CAP:
        raise ValueError(f"n = {datum.n} exceeds the orbit enumeration cap {ORBIT_N_CAP}")
    e, f = datum.e, datum.f
    cosets = [CosetRep(k, i) for i in range(f) for k in range(e)]
    act = {}
    for gen in ((1, 0), (0, 1)):
        act[gen] = {r: left_act(datum, gen, r) for r in cosets}

    pairs = [(x, y) for x in cosets for y in cosets if x != y]
    orbit_sets = []
    orbit_of_pair = {}
    for pr in pairs:
        if pr in orbit_of_pair:
            continue
        comp = set()
        stack = [pr]
        while stack:
            cur = stack.pop()
            if cur in comp:
                continue
            comp.add(cur)
            for gen in ((1, 0), (0, 1)):
                amap = act[gen]
                stack.append((amap[cur[0]], amap[cur[1]]))
        idx = len(orbit_sets)
        orbit_sets.append(frozenset(comp))
        for q in comp:
            orbit_of_pair[q] = idx

    reps = []
    for comp in orbit_sets:
        ds = sorted((dst for (src, dst) in comp if src == IDENTITY), key=lambda r: r.key)
        reps.append(ds[0])

    classes = []
    for comp, g in zip(orbit_sets, reps):
        size = len(comp)
        sym_brute = (g, IDENTITY) in comp
        sym_xg, witness = _xg_symmetric(datum, g)
        if sym_brute != sym_xg:
            raise AssertionError(
                f"symmetry tests disagree on {g} for datum {datum.key()}: "
                f"brute={sym_brute} xg={sym_xg}")
        u = unif_multiplier(datum, g)
        n_group = lcm(datum.mu_order, u.den)
        f_alpha = _mult_order(datum.q, n_group)
        if size % f_alpha or size // f_alpha != datum.e:
            raise AssertionError(f"orbit size {size} incompatible with f_alpha={f_alpha}")
        partner = None
        if sym_brute:
            if e % 2 == 0 and g == CosetRep(e // 2, 0):
                kind, alt = SYM_RAMIFIED, "ramified"
            else:
                allowed_i = {0} if f % 2 else {0, f // 2}
                if g.i not in allowed_i:
                    raise AssertionError(f"symmetric rep {g} with unexpected phi part")
                kind = SYM_UNRAMIFIED
                alt = "ramified" if g.i == 0 else "unramified"
        else:
            kind, alt = ASYMMETRIC, "asymmetric"
            partner = reps[orbit_of_pair[(g, IDENTITY)]]
        classes.append(OrbitClass(
            datum=datum,
            rep=g,
            size=size,
            kind=kind,
            alt_class=alt,
            partner=partner,
            deg_f_alpha=size,
            e_f_alpha=size // f_alpha,
            f_f_alpha=f_alpha,
            deg_f_pm_alpha=size // 2 if sym_brute else size,
            alpha_of_unif=u.inverse(),
            alpha_unit_exponent_factor=1 - datum.q ** g.i,
            xg_witness_r=witness,
        ))

    classes.sort(key=lambda o: o.rep.key)
    total = sum(o.size for o in classes)
    if total != datum.n * datum.n - datum.n:
        raise AssertionError(f"orbit sizes sum to {total}, expected n^2 - n")
    return tuple(classes)


def orbit_containing(datum: FieldDatum, k: int, i: int) -> OrbitClass:
    """The orbit class of the root attached to (identity, sigma^k phi^i)."""
    target = normalize(datum, k, i)
    if target == IDENTITY:
        raise ValueError(f"({k}, {i}) normalizes to the trivial coset; not a root")
    for orb in enumerate_orbits(datum):
        if _pair_in_orbit(datum, orb, target):
            return orb
    raise AssertionError("unreachable: every pair lies in some orbit")


def _pair_in_orbit(datum: FieldDatum, orb: OrbitClass, dst: CosetRep) -> bool:
    # dst's double coset matches orb's rep iff (identity, dst) is reachable;
    # re-walk the orbit of (identity, orb.rep)
    comp = set()
    stack = [(IDENTITY, orb.rep)]
    while stack:
        cur = stack.pop()
        if cur in comp:
            continue
        comp.add(cur)
        if cur == (IDENTITY, dst):
            return True
        for gen in ((1, 0), (0, 1)):
            stack.append((left_act(datum, gen, cur[0]), left_act(datum, gen, cur[1])))
    return (IDENTITY, dst) in comp
