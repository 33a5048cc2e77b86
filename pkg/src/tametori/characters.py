"""The three character families per orbit and the comparison identity.

Per orbit class the package evaluates

  * ``epsilon_alpha`` -- the sign character: a quadratic-character value of
    alpha(gamma) on the residue units of F_alpha (asymmetric) or on its
    norm-one subgroup (symmetric unramified), switched on by the parity of
    the stratum level;
  * ``chi_minimal``   -- the minimally ramified chi-data: trivial /
    unramified quadratic / pinned at the probe 2*a_alpha by the Langlands
    constant of the quadratic ramified step;
  * ``chi_rectifier`` -- the rectifier chi-data, via the evaluated t-factor
    case table; the ramified-orbit value carries an explicit quadratic-form
    discriminant cross-check and the asymmetric values are cross-checked
    against the multiplication-permutation-sign oracle on small fields.

All values are exact fractions in Q/Z.  Tame characters are recorded by
their values on the fixed generator of mu_E and on pi_E.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .ffield import build_field, mult_perm_sign, norm_one_quad_char
from .frame import ASYMMETRIC, SYM_RAMIFIED, SYM_UNRAMIFIED, FieldDatum, OrbitClass
from .gauss import AdditiveCharSpec, lambda_quad_ramified, normalized_gauss
from .qz import (MINUS_ONE, ONE, RootOfUnity, jacobi, quad_char_cyclic,
                 quad_char_value, sign_root)
from .strata import StratumInfo, SymRamData, TowerScenario

ORACLE_FIELD_CAP = 2401


@dataclass(frozen=True)
class TameCharacter:
    """A tamely ramified character of E^x, trivial on 1 + p_E, recorded by its
    values at the fixed generator of mu_E and at pi_E."""

    residue_order: int
    on_mu_gen: RootOfUnity
    on_unif: RootOfUnity

    def __post_init__(self):
        if not (self.on_mu_gen ** (self.residue_order - 1)).is_one():
            raise ValueError("unit-part value is not a character of mu_E")

    @staticmethod
    def trivial(residue_order: int) -> "TameCharacter":
        return TameCharacter(residue_order, ONE, ONE)

    def is_trivial(self) -> bool:
        return self.on_mu_gen.is_one() and self.on_unif.is_one()

    def evaluate(self, unit_exponent: int, valuation: int) -> RootOfUnity:
        return (self.on_mu_gen ** unit_exponent) * (self.on_unif ** valuation)

    def inverse(self) -> "TameCharacter":
        return TameCharacter(self.residue_order, self.on_mu_gen.inverse(),
                             self.on_unif.inverse())

    def __mul__(self, other: "TameCharacter") -> "TameCharacter":
        if self.residue_order != other.residue_order:
            raise ValueError("characters live on different groups")
        return TameCharacter(self.residue_order, self.on_mu_gen * other.on_mu_gen,
                             self.on_unif * other.on_unif)


@dataclass(frozen=True)
class ProbeValues:
    """Partial data for the ramified-orbit minimal character: its quadratic
    restriction to mu_E plus its value at the probe element 2*a_alpha."""

    residue_order: int
    on_mu_gen: RootOfUnity
    at_2a_alpha: RootOfUnity


def epsilon_alpha(orbit: OrbitClass, stratum: StratumInfo) -> TameCharacter:
    """Sign character of one asymmetric pair or symmetric unramified orbit."""
    if orbit.kind == SYM_RAMIFIED:
        raise ValueError("the ramified symmetric contribution is the toral invariant")
    ro = orbit.datum.mu_order + 1
    if not stratum.v_nonzero:
        return TameCharacter.trivial(ro)
    a_mu = orbit.alpha_value(1, 0)
    a_unif = orbit.alpha_value(0, 1)
    if orbit.kind == ASYMMETRIC:
        units = orbit.residue_order_f_alpha - 1
        return TameCharacter(ro,
                             sign_root(quad_char_value(a_mu, units)),
                             sign_root(quad_char_value(a_unif, units)))
    q_prime = _isqrt_power(orbit.datum.q, orbit.f_f_alpha)
    return TameCharacter(ro,
                         sign_root(norm_one_quad_char(q_prime, a_mu)),
                         sign_root(norm_one_quad_char(q_prime, a_unif)))


def chi_minimal(orbit: OrbitClass, stratum: StratumInfo,
                symram: Optional[SymRamData] = None) -> Union[TameCharacter, ProbeValues]:
    """Minimally ramified chi-data, restricted to E^x (probe form for the
    ramified symmetric orbit)."""
    ro = orbit.datum.mu_order + 1
    if orbit.kind == ASYMMETRIC:
        return TameCharacter.trivial(ro)
    if orbit.kind == SYM_UNRAMIFIED:
        return TameCharacter(ro, ONE, MINUS_ONE)
    if symram is None:
        raise ValueError("ramified symmetric orbit needs tower data")
    lam = lambda_quad_ramified(symram.k_tower_residue_order, symram.m)
    return ProbeValues(ro, MINUS_ONE, lam)


def chi_rectifier(orbit: OrbitClass, stratum: StratumInfo,
                  symram: Optional[SymRamData] = None,
                  scenario: Optional[TowerScenario] = None) -> TameCharacter:
    """Rectifier chi-data restricted to E^x.  Asymmetric orbits return the
    product over the orbit pair, taken once."""
    datum = orbit.datum
    ro = datum.mu_order + 1
    if orbit.kind == ASYMMETRIC:
        if not stratum.v_nonzero:
            return TameCharacter.trivial(ro)
        units = orbit.residue_order_f_alpha - 1
        a_mu = orbit.alpha_value(1, 0)
        a_unif = orbit.alpha_value(0, 1)
        s_mu = quad_char_value(a_mu, units)
        s_unif = quad_char_value(a_unif, units)
        _perm_sign_cross_check(datum, orbit, a_mu, s_mu)
        _perm_sign_cross_check(datum, orbit, a_unif, s_unif)
        return TameCharacter(ro, sign_root(s_mu), sign_root(s_unif))

    if orbit.kind == SYM_UNRAMIFIED:
        if not stratum.v_nonzero:
            return TameCharacter(ro, ONE, MINUS_ONE)
        i = orbit.rep.i
        on_mu = ONE if i == 0 else MINUS_ONE
        beta = orbit.alpha_value(0, 1)
        if i != 0 and beta.is_one():
            on_unif = MINUS_ONE
        elif i != 0 and beta == MINUS_ONE:
            half = (datum.q ** (datum.f // 2) - 1) // 2
            on_unif = MINUS_ONE if half % 2 else ONE
        else:
            if beta.order <= 2:
                raise AssertionError(f"unexpected beta = {beta} for rep {orbit.rep}")
            on_unif = MINUS_ONE * sign_root(_prime_field_norm_one(datum.p, beta))
        return TameCharacter(ro, on_mu, on_unif)

    if symram is None or scenario is None:
        raise ValueError("ramified symmetric orbit needs tower data and a scenario")
    return TameCharacter(ro, MINUS_ONE,
                         _symram_unif_value(datum, symram, scenario.zeta_iprime_exponent))


def _isqrt_power(q: int, f_alpha: int) -> int:
    if f_alpha % 2:
        raise AssertionError("symmetric unramified orbit with odd residue degree")
    return q ** (f_alpha // 2)


def _prime_field_norm_one(p: int, beta: RootOfUnity) -> int:
    """(beta / F_p[beta]^1): locate the prime-field span of beta from its order
    and evaluate the norm-one quadratic character there."""
    m_beta = beta.order
    degree = _order_of(p, m_beta)
    if degree % 2:
        raise ValueError(
            f"F_p[beta] has odd degree {degree}; no index-2 subfield for beta of order {m_beta}")
    return norm_one_quad_char(p ** (degree // 2), beta)


def _order_of(base: int, modulus: int) -> int:
    o, cur = 1, base % modulus
    while cur != 1:
        cur = (cur * base) % modulus
        o += 1
        if o > modulus:
            raise AssertionError("order computation diverged")
    return o


def _perm_sign_cross_check(datum: FieldDatum, orbit: OrbitClass,
                           value: RootOfUnity, closed_sign: int) -> bool:
    """Closed-form quadratic character against the explicit permutation sign;
    returns False when the field is too large to enumerate."""
    q_alpha = orbit.residue_order_f_alpha
    if q_alpha > ORACLE_FIELD_CAP:
        return False
    field = build_field(datum.p, datum.a * orbit.f_f_alpha)
    exponent = value.num * ((q_alpha - 1) // value.den)
    if mult_perm_sign(field, exponent) != closed_sign:
        raise AssertionError(
            f"permutation-sign oracle disagrees with the quadratic character "
            f"at {value} over F_{q_alpha}")
    return True


def _symram_unif_value(datum: FieldDatum, symram: SymRamData, zeta_exp: int) -> RootOfUnity:
    """Closed-form value at pi_E for the ramified symmetric orbit:
    (zeta'/k_E^x) * n(psi) * ((-1)^s * m / q^f), where psi is the canonical
    character of the residue field two steps below the top of the tower.

    The discriminant input (-1)^s * 4m is recomputed through the explicit
    alternating-vector quadratic form and both routes must agree.
    """
    big_q = symram.k_tower_residue_order
    zeta_sign = quad_char_cyclic(big_q - 1, zeta_exp)
    norm = normalized_gauss(AdditiveCharSpec(datum.p, datum.a * datum.f))
    jac = jacobi((-1) ** symram.s * symram.m, big_q)
    explicit = _explicit_discriminant_sign(datum, symram)
    if explicit != jac:
        raise AssertionError(
            f"quadratic-form discriminant route ({explicit}) disagrees with the "
            f"closed form ({jac}) for e={datum.e}, s={symram.s}")
    return sign_root(zeta_sign) * norm * sign_root(jac)


def _explicit_discriminant_sign(datum: FieldDatum, symram: SymRamData) -> int:
    """Build the rank-one translation module inside k_E^(2m), evaluate the
    quadratic form v(a) -> nu(2 * v(a) * (-1)^s * v(a)), and return the
    quadratic-character class of its discriminant."""
    field = build_field(datum.p, datum.a * datum.f)
    s, m = symram.s, symram.m
    sign_elt = field.from_int((-1) ** s)
    two = field.from_int(2)

    def form(a):
        neg_a = _neg(field, a)
        vec = [a if j % 2 == 0 else neg_a for j in range(2 * m)]
        total = 0
        for comp in vec:
            total = field.add(total, field.mul(two, field.mul(comp, field.mul(sign_elt, comp))))
        return total

    disc = form(field.from_int(1))
    gen = field.generator
    if form(gen) != field.mul(disc, field.mul(gen, gen)):
        raise AssertionError("translation-module form is not a scalar quadratic form")
    if disc != field.from_int((-1) ** s * 4 * m):
        raise AssertionError("explicit discriminant differs from (-1)^s * 4m")
    return quad_char_cyclic(field.q - 1, field.discrete_log(disc))


def _neg(field, x):
    return field.mul(field.from_int(-1), x)


def eval_at_probe(chi: TameCharacter, symram: SymRamData,
                  scenario: TowerScenario) -> RootOfUnity:
    """Value of a tame character at the probe 2*a_alpha = 4 * zeta' *
    pi_E^-(2s+1); the unit part is resolved through the discrete log of 4."""
    datum = scenario.datum
    w = _probe_unit_exponent(datum, scenario.zeta_iprime_exponent)
    return chi.evaluate(w, -(2 * symram.s + 1))


def _probe_unit_exponent(datum: FieldDatum, zeta_exp: int) -> int:
    field = build_field(datum.p, datum.a * datum.f)
    return (field.discrete_log(field.from_int(4)) + zeta_exp) % datum.mu_order


def mu_product(chars) -> TameCharacter:
    """Product over orbit classes of the restrictions to E^x (asymmetric pairs
    enter as their pair product, once)."""
    chars = list(chars)
    if not chars:
        raise ValueError("empty product")
    out = TameCharacter.trivial(chars[0].residue_order)
    for ch in chars:
        out = out * ch
    return out


def epsilon_product(chars) -> TameCharacter:
    """Product of the sign characters over asymmetric pair-orbits and
    symmetric unramified orbits (the ramified contribution is trivial)."""
    return mu_product(chars)


def toral_invariant_check(n: int, i: int, j: int) -> bool:
    """Exact matrix-unit identity E_ij E_ji - E_ji E_ij = E_ii - E_jj in
    gl_n(Z); the bracket computation behind the triviality of the ramified
    symmetric contribution."""
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise ValueError(f"need distinct indices in [1, {n}]")

    def unit(r, c):
        return [[1 if (x, y) == (r - 1, c - 1) else 0 for y in range(n)] for x in range(n)]

    def matmul(a, b):
        return [[sum(a[x][k] * b[k][y] for k in range(n)) for y in range(n)]
                for x in range(n)]

    def matsub(a, b):
        return [[a[x][y] - b[x][y] for y in range(n)] for x in range(n)]

    e_ij, e_ji = unit(i, j), unit(j, i)
    bracket = matsub(matmul(e_ij, e_ji), matmul(e_ji, e_ij))
    expected = matsub(unit(i, i), unit(j, j))
    return bracket == expected


def orbit_identity_holds(orbit: OrbitClass, eps: Optional[TameCharacter],
                         minimal: Union[TameCharacter, ProbeValues],
                         rect: TameCharacter,
                         symram: Optional[SymRamData] = None,
                         scenario: Optional[TowerScenario] = None) -> bool:
    """The per-orbit comparison: rectifier^(-1) = epsilon^(-1) * minimal,
    probed at 2*a_alpha for the ramified symmetric orbit."""
    if orbit.kind == ASYMMETRIC:
        return rect.on_mu_gen == eps.on_mu_gen and rect.on_unif == eps.on_unif
    if orbit.kind == SYM_UNRAMIFIED:
        lhs = rect.inverse()
        rhs = eps.inverse() * minimal
        return lhs.on_mu_gen == rhs.on_mu_gen and lhs.on_unif == rhs.on_unif
    mu_ok = rect.on_mu_gen.inverse() == minimal.on_mu_gen
    probe_ok = eval_at_probe(rect, symram, scenario).inverse() == minimal.at_2a_alpha
    return mu_ok and probe_ok


def aggregate_identity_holds(entries, scenario: TowerScenario,
                             symram: Optional[SymRamData]) -> bool:
    """Product form of the identity over all orbit classes: checked at the
    mu_E generator, and at pi_E (no ramified orbit) or at the probe element
    (with one)."""
    mu_lhs = ONE
    mu_rhs = ONE
    for _, eps, minimal, rect in entries:
        mu_lhs = mu_lhs * rect.on_mu_gen.inverse()
        if eps is not None:
            mu_rhs = mu_rhs * eps.on_mu_gen.inverse()
        mu_rhs = mu_rhs * minimal.on_mu_gen
    if mu_lhs != mu_rhs:
        return False

    if symram is None:
        lhs = ONE
        rhs = ONE
        for _, eps, minimal, rect in entries:
            lhs = lhs * rect.on_unif.inverse()
            if eps is not None:
                rhs = rhs * eps.on_unif.inverse()
            rhs = rhs * minimal.on_unif
        return lhs == rhs

    datum = scenario.datum
    w = _probe_unit_exponent(datum, scenario.zeta_iprime_exponent)
    v = -(2 * symram.s + 1)
    lhs = ONE
    rhs = ONE
    for _, eps, minimal, rect in entries:
        lhs = lhs * rect.evaluate(w, v).inverse()
        if eps is not None:
            rhs = rhs * eps.evaluate(w, v).inverse()
        if isinstance(minimal, ProbeValues):
            rhs = rhs * minimal.at_2a_alpha
        else:
            rhs = rhs * minimal.evaluate(w, v)
    return lhs == rhs
