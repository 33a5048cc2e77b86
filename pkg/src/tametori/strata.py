"""Jump towers and stratum assignment.

A tower scenario is a descending chain of subfield descriptions
(e_j, f_j), j = 0..d-1, between E and F together with strictly increasing
positive levels t_0 < ... < t_{d-1}.  Subfields are modeled as
F[mu_{q^{f_j}-1}, pi_E^{e/e_j}], so a coset fixes the j-th field iff f_j
divides its phi part and its uniformizer multiplier dies under the e/e_j
power.  The membership-count validation rejects (e_j, f_j, t) combinations
that do not describe a genuine subfield of the stated degree instead of
silently mis-modeling them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .frame import SYM_RAMIFIED, CosetRep, FieldDatum, OrbitClass, unif_multiplier

SKIP_MEMBERSHIP = "membership-count failure"
SKIP_RAM_PARITY = "ramified-parity failure"


@dataclass(frozen=True)
class TowerScenario:
    """Jump data: chain of (e_j, f_j) pairs below E, one level per step, and
    the free unit ``zeta_iprime_exponent`` entering the ramified-orbit value."""

    datum: FieldDatum
    chain: tuple
    levels: tuple
    zeta_iprime_exponent: int = 1

    def __post_init__(self):
        d = len(self.chain)
        if len(self.levels) != d:
            raise ValueError("one level per chain entry")
        if d == 0:
            if self.datum.n != 1:
                raise ValueError("empty tower only for the trivial extension")
            return
        e, f = self.datum.e, self.datum.f
        e0, f0 = self.chain[0]
        if e0 != e or f % f0:
            raise ValueError(f"first subfield must contain pi_E: got ({e0}, {f0})")
        prev = (e, f)
        for j, (ej, fj) in enumerate(self.chain):
            if prev[0] % ej or prev[1] % fj:
                raise ValueError("chain entries must divide their predecessors")
            if j > 0 and (ej, fj) == prev:
                raise ValueError("chain must strictly descend")
            prev = (ej, fj)
        if self.chain[-1] == (1, 1):
            raise ValueError("the last chain entry must strictly contain the base")
        if list(self.levels) != sorted(set(self.levels)) or self.levels[0] < 1:
            raise ValueError("levels must be strictly increasing positive integers")
        object.__setattr__(self, "zeta_iprime_exponent",
                           self.zeta_iprime_exponent % self.datum.mu_order)

    @property
    def depth(self) -> int:
        return len(self.chain)

    def h_values(self) -> tuple:
        """Display-only: floor(t/2) + 1 per level."""
        return tuple(t // 2 + 1 for t in self.levels)

    def j_values(self) -> tuple:
        """Display-only: floor((t+1)/2) per level."""
        return tuple((t + 1) // 2 for t in self.levels)

    def key(self):
        return (self.chain, self.levels, self.zeta_iprime_exponent)


@dataclass(frozen=True)
class StratumInfo:
    orbit: OrbitClass
    stratum_index: int
    t_at_stratum: Optional[int]
    v_nonzero: bool

    @property
    def w_nonzero(self) -> bool:
        return not self.v_nonzero


@dataclass(frozen=True)
class SymRamData:
    """Ramified-orbit bookkeeping: e = 2**l * m with m odd, level = 2s + 1,
    and the residue order of the field two steps below the top of the
    quadratic tower (equal to |k_E| since the tower starts at F[mu_E])."""

    l: int
    m: int
    s: int
    k_tower_residue_order: int


def fixes_subfield(datum: FieldDatum, rep: CosetRep, ej: int, fj: int) -> bool:
    """Does sigma^k phi^i fix F[mu_{q^fj - 1}, pi_E^(e/ej)]?"""
    if rep.i % fj:
        return False
    return (unif_multiplier(datum, rep) ** (datum.e // ej)).is_one()


def validate_scenario(scenario: TowerScenario, orbits: tuple) -> Optional[str]:
    """None if the scenario is usable, else one of the two skip reasons."""
    datum = scenario.datum
    cosets = [CosetRep(k, i) for i in range(datum.f) for k in range(datum.e)]
    for ej, fj in scenario.chain:
        count = sum(fixes_subfield(datum, r, ej, fj) for r in cosets)
        if count != datum.n // (ej * fj):
            return SKIP_MEMBERSHIP
    for orb in orbits:
        if orb.kind == SYM_RAMIFIED:
            info = stratum_of(scenario, orb)
            if info.stratum_index < 0:
                raise AssertionError("ramified symmetric orbit at stratum -1")
            if scenario.levels[info.stratum_index] % 2 == 0:
                return SKIP_RAM_PARITY
    return None


def stratum_of(scenario: TowerScenario, orbit: OrbitClass) -> StratumInfo:
    """The unique index i with g fixing the (i+1)-th subfield but not the
    i-th (index -1 when g already fixes the top subfield; index d-1 when g
    fixes nothing but the base)."""
    datum = scenario.datum
    g = orbit.rep
    fixed = [fixes_subfield(datum, g, ej, fj) for ej, fj in scenario.chain]
    for a, b in zip(fixed, fixed[1:]):
        if a and not b:
            raise AssertionError("subfield fixing is not monotone along the chain")
    first = next((j for j, ok in enumerate(fixed) if ok), scenario.depth)
    index = first - 1
    if index < 0:
        return StratumInfo(orbit, -1, None, False)
    t = scenario.levels[index]
    return StratumInfo(orbit, index, t, t % 2 == 0)


def sym_ram_data(scenario: TowerScenario, info: StratumInfo) -> SymRamData:
    """Auxiliary data for the ramified symmetric orbit; its level must be odd."""
    datum = scenario.datum
    if datum.e % 2:
        raise ValueError("no ramified symmetric orbit: e is odd")
    if info.t_at_stratum is None or info.t_at_stratum % 2 == 0:
        raise ValueError(
            f"ramified symmetric orbit needs an odd level, got {info.t_at_stratum}")
    l = 0
    m = datum.e
    while m % 2 == 0:
        m //= 2
        l += 1
    return SymRamData(l=l, m=m, s=(info.t_at_stratum - 1) // 2,
                      k_tower_residue_order=datum.q ** datum.f)


def descent_check(scenario: TowerScenario, sub_chain: tuple, orbits: tuple) -> bool:
    """Structural sanity check: strata realized by roots fixed by the subgroup
    attached to one subfield description (e_H, f_H) must be a subset of the
    ambient strata."""
    datum = scenario.datum
    e_h, f_h = sub_chain
    if datum.e % e_h or datum.f % f_h:
        raise ValueError(f"({e_h}, {f_h}) does not describe a subfield")
    ambient = {stratum_of(scenario, o).stratum_index for o in orbits}
    sub = {stratum_of(scenario, o).stratum_index
           for o in orbits if fixes_subfield(datum, o.rep, e_h, f_h)}
    return sub <= ambient
