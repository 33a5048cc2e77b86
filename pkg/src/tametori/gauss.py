"""Gauss sums over residue fields, exactly and in closed form.

The canonical level-one additive character of F_{p^m} is x -> zeta_p^Tr(x)
with the absolute trace; every reported value is relative to this
normalization.  The closed form uses the classical sign of the quadratic
Gauss sum over F_p together with the lifting relation
g_{F_{p^m}} = -(-g_{F_p})^m and the multiplier twist
n(psi_a) = (a / k^x) * n(psi_1); both classical inputs are cross-validated
here by exact squaring and a single numeric snap test.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .ffield import ENUM_CAP, FField, build_field
from .qz import MINUS_ONE, ONE, CyclotomicInt, RootOfUnity, jacobi, quad_char_cyclic, sign_root


@dataclass(frozen=True)
class AdditiveCharSpec:
    """x -> zeta_p^Tr(a*x) on F_{p^m}, a = generator**multiplier_exponent."""

    p: int
    m: int
    multiplier_exponent: int = 0


def gauss_sum_exact(spec: AdditiveCharSpec) -> CyclotomicInt:
    """Full-enumeration Gauss sum, as an exact element of Z[zeta_p]."""
    field = build_field(spec.p, spec.m)
    if field.q > ENUM_CAP:
        raise ValueError(f"field size {field.q} exceeds the enumeration cap {ENUM_CAP}")
    p, q = spec.p, field.q
    a = field.element_from_exponent(spec.multiplier_exponent)
    vec = [0] * p
    for k in range(q - 1):
        x = field.element_from_exponent(k)
        tr = field.trace_to_prime(field.mul(a, x))
        vec[tr] += -1 if k % 2 else 1
    top = vec[p - 1]
    total = CyclotomicInt(p, tuple(vec[i] - top for i in range(p - 1)))
    # internal trap: the square must be (-1/q) * q in Z
    if (total * total).as_int() != jacobi(-1, q) * q:
        raise AssertionError(f"Gauss sum square check failed for {spec}")
    return total


def gauss_sum_float(spec: AdditiveCharSpec) -> complex:
    """Floating-point summation of the same Gauss sum (numeric oracle)."""
    field = build_field(spec.p, spec.m)
    a = field.element_from_exponent(spec.multiplier_exponent)
    total = 0j
    for k in range(field.q - 1):
        x = field.element_from_exponent(k)
        tr = field.trace_to_prime(field.mul(a, x))
        total += (-1 if k % 2 else 1) * cmath.exp(2j * cmath.pi * tr / spec.p)
    return total


def normalized_gauss(spec: AdditiveCharSpec) -> RootOfUnity:
    """The normalized Gauss sum q^(-1/2) * g(psi), a fourth root of unity."""
    base = ONE if spec.p % 4 == 1 else RootOfUnity(1, 4)
    canonical = MINUS_ONE * (MINUS_ONE * base) ** spec.m
    q = spec.p ** spec.m
    twist = quad_char_cyclic(q - 1, spec.multiplier_exponent)
    return canonical * sign_root(twist)


def lambda_quad_ramified(residue_field_order: int, multiplier: int) -> RootOfUnity:
    """Langlands constant of a quadratic ramified extension whose base sits at
    the top of a tower: the residue-field order is that of the base, and the
    base additive character is the canonical one composed with multiplication
    by an odd totally-ramified degree ``multiplier``.

    Value: n(psi) * (multiplier / residue_field_order)^(-1).
    """
    if multiplier % 2 == 0 or multiplier < 1:
        raise ValueError(f"multiplier must be odd and positive, got {multiplier}")
    p, m = _prime_power_split(residue_field_order)
    jac = jacobi(multiplier, residue_field_order)
    if jac == 0:
        raise ValueError(f"multiplier {multiplier} shares a factor with {residue_field_order}")
    return normalized_gauss(AdditiveCharSpec(p, m)) * sign_root(jac)


def _prime_power_split(n: int) -> tuple:
    if n < 3:
        raise ValueError(f"not an odd prime power: {n}")
    p = None
    d = 2
    nn = n
    while d * d <= nn:
        if nn % d == 0:
            p = d
            break
        d += 1
    if p is None:
        p = n
    m = 0
    while nn % p == 0:
        nn //= p
        m += 1
    if nn != 1 or p == 2:
        raise ValueError(f"not an odd prime power: {n}")
    return p, m
