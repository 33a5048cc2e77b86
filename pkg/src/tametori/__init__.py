"""Exact verifier for character identities of tame elliptic tori.

Classifies Galois orbits of roots of the elliptic tori attached to tame
extensions of p-adic fields, evaluates the sign character and two chi-data
families on each orbit, and checks their comparison identity exactly over
parameter grids, with brute-force oracles backing every closed form.
"""

from .qz import ONE, MINUS_ONE, IMAG, CyclotomicInt, RootOfUnity, jacobi, quad_char_cyclic
from .ffield import FField, build_field, mult_perm_sign, norm_one_quad_char
from .gauss import AdditiveCharSpec, gauss_sum_exact, lambda_quad_ramified, normalized_gauss
from .frame import (ASYMMETRIC, SYM_RAMIFIED, SYM_UNRAMIFIED, CosetRep,
                    FieldDatum, OrbitClass, Root, enumerate_orbits,
                    left_act, normalize, unif_multiplier)
from .strata import (StratumInfo, SymRamData, TowerScenario, descent_check,
                     stratum_of, sym_ram_data, validate_scenario)
from .characters import (ProbeValues, TameCharacter, aggregate_identity_holds,
                         chi_minimal, chi_rectifier, epsilon_alpha,
                         epsilon_product, eval_at_probe, mu_product,
                         orbit_identity_holds, toral_invariant_check)
from .verifier import GridConfig, parse_config, render_csv, render_json, run_verify

__all__ = [
    "ONE", "MINUS_ONE", "IMAG", "CyclotomicInt", "RootOfUnity", "jacobi",
    "quad_char_cyclic", "FField", "build_field", "mult_perm_sign",
    "norm_one_quad_char", "AdditiveCharSpec", "gauss_sum_exact",
    "lambda_quad_ramified", "normalized_gauss", "ASYMMETRIC", "SYM_RAMIFIED",
    "SYM_UNRAMIFIED", "CosetRep", "FieldDatum", "OrbitClass", "Root",
    "enumerate_orbits", "left_act", "normalize", "unif_multiplier",
    "StratumInfo", "SymRamData", "TowerScenario", "descent_check",
    "stratum_of", "sym_ram_data", "validate_scenario", "ProbeValues",
    "TameCharacter", "aggregate_identity_holds", "chi_minimal",
    "chi_rectifier", "epsilon_alpha", "epsilon_product", "eval_at_probe",
    "mu_product", "orbit_identity_holds", "toral_invariant_check",
    "GridConfig", "parse_config", "render_csv", "render_json", "run_verify",
]
