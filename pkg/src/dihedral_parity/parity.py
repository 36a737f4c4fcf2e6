"""Local parity engine for elliptic curves in D_{2p} extensions.

A local setting bundles the residue characteristic ell, the reduction of
the curve over the base (one of the five descriptors), the decomposition
and inertia subgroups (G_v, I_v) of a place of the dihedral field, and a
multiplicity parameter r.  Two independently derived closed forms are
evaluated:

  * c_parity: the parity of ord_p of the Theta-weighted product of
    Tamagawa numbers and period factors over the subfields of the
    relation Theta = [1] - 2[D_2] - [C_p] + 2[D_{2p}],
  * w_ratio: the ratio of local root numbers picked up by twisting.

The expected identity is that the two always agree; verify_local reports
both with full branch traces.

Conventions: chi denotes the quadratic character twisting a potentially
multiplicative curve to split multiplicative (trivial for split,
unramified for nonsplit, ramified for additive); eta_v is the quadratic
character of G_v cut out by the rotation subgroup.  The flag
eta_equals_chi records whether those coincide, and is both required and
meaningful only when G_v = I_v = D_{2p} with additive potentially
multiplicative reduction; everywhere else the answer is forced.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd

from sympy import factorint, isprime

from .base_change import (AdditivePotGood, AdditivePotMult, Good, NonsplitMult,
                          ReductionDescriptor, SplitMult)
from .characters import SubgroupTag, TRIVIAL, ORDER2, cyclic_p_power, dihedral_p_power
from .tate import legendre, local_reduction, potential_class, valuation
from .weierstrass import WeierstrassCurve

CYCLIC = cyclic_p_power(1)
DIHEDRAL = dihedral_p_power(1)

POT_GOOD_DELTAS = (2, 3, 4, 6, 8, 9, 10)


class InadmissibleSettingError(ValueError):
    """The local setting is internally inconsistent."""


class MissingCompletionError(ValueError):
    """A bad prime of the curve has no completion data."""


class QuadCharClass(enum.Enum):
    TRIVIAL = "trivial"
    UNRAMIFIED = "unramified"
    RAMIFIED = "ramified"


_ALLOWED_INERTIA = {
    "trivial": ("trivial",),
    "order2": ("trivial", "order2"),
    "cyclic": ("trivial", "cyclic"),
    "dihedral": ("cyclic", "dihedral"),
}


@dataclass(frozen=True)
class LocalSetting:
    """One local situation at a place of the dihedral field."""
    p: int
    ell: int
    r: int
    base: ReductionDescriptor
    G_v: SubgroupTag
    I_v: SubgroupTag
    eta_equals_chi: bool | None = None

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 5 or not isprime(self.p):
            raise InadmissibleSettingError(f"p must be a prime >= 5, got {self.p}")
        if not isinstance(self.ell, int) or not isprime(self.ell):
            raise InadmissibleSettingError(f"ell must be prime, got {self.ell}")
        if not isinstance(self.r, int) or self.r < 1:
            raise InadmissibleSettingError(f"r must be a positive integer, got {self.r}")
        for tag in (self.G_v, self.I_v):
            if not isinstance(tag, SubgroupTag):
                raise InadmissibleSettingError(f"{tag!r} is not a subgroup tag")
            if tag.kind in ("cyclic", "dihedral") and tag.level != 1:
                raise InadmissibleSettingError(
                    f"{tag.label} does not live in the D_2p lattice")
        if self.I_v.kind not in _ALLOWED_INERTIA[self.G_v.kind]:
            raise InadmissibleSettingError(
                f"inertia {self.I_v.label} is impossible under decomposition "
                f"{self.G_v.label} (quotient must be cyclic)")
        if self.I_v.kind == "dihedral" and self.ell != self.p:
            raise InadmissibleSettingError(
                "dihedral inertia is wild and forces ell = p")
        if not isinstance(self.base, (Good, SplitMult, NonsplitMult,
                                      AdditivePotMult, AdditivePotGood)):
            raise InadmissibleSettingError(f"unknown reduction descriptor {self.base!r}")
        if isinstance(self.base, AdditivePotGood) and self.ell == self.p \
                and self.base.delta not in POT_GOOD_DELTAS:
            raise InadmissibleSettingError(
                f"delta = {self.base.delta} cannot occur for a minimal model at ell = p >= 5")
        needs_flag = (self.G_v.kind == "dihedral" and self.I_v.kind == "dihedral"
                      and isinstance(self.base, AdditivePotMult))
        if needs_flag and not isinstance(self.eta_equals_chi, bool):
            raise InadmissibleSettingError(
                "eta_equals_chi must be set for dihedral inertia with "
                "additive potentially multiplicative reduction")
        if not needs_flag and self.eta_equals_chi is not None:
            raise InadmissibleSettingError(
                "eta_equals_chi is determined here and must be left as None")

    # --- derived character classes ------------------------------------

    def chi_class(self) -> QuadCharClass | None:
        """Class of the split-making twist character, when it exists."""
        if isinstance(self.base, SplitMult):
            return QuadCharClass.TRIVIAL
        if isinstance(self.base, NonsplitMult):
            return QuadCharClass.UNRAMIFIED
        if isinstance(self.base, AdditivePotMult):
            return QuadCharClass.RAMIFIED
        return None

    def eta_class(self) -> QuadCharClass:
        """Class of eta_v, the quadratic character of G_v through the
        rotation quotient."""
        if self.G_v.kind in ("trivial", "cyclic"):
            return QuadCharClass.TRIVIAL
        # order2 or dihedral: eta_v is a genuine quadratic character,
        # ramified exactly when inertia surjects onto the quotient
        if self.I_v.kind in ("order2", "dihedral"):
            return QuadCharClass.RAMIFIED
        return QuadCharClass.UNRAMIFIED

    def eta_chi_agree(self) -> bool | None:
        """Whether eta_v equals chi, when chi exists and G_v = D_2p."""
        if self.G_v.kind != "dihedral" or self.chi_class() is None:
            return None
        if isinstance(self.base, SplitMult):
            return False  # chi trivial, eta_v is not
        if isinstance(self.base, NonsplitMult):
            return self.I_v.kind == "cyclic"
        if self.I_v.kind == "cyclic":
            return False  # eta_v unramified, chi ramified
        return self.eta_equals_chi


def ramification_degree_e(delta: int) -> int:
    """Order of the tame potential-good monodromy: 12 / gcd(delta, 12)."""
    return 12 // gcd(delta, 12)


# --- the two closed forms --------------------------------------------------

def c_parity(setting: LocalSetting) -> tuple[int, dict]:
    """(-1)^(ord_p of the Theta-weighted local Tamagawa/period product),
    plus a branch trace."""
    s = setting
    trace: dict = {"G_v": s.G_v.label, "I_v": s.I_v.label}
    if s.G_v.kind != "dihedral":
        trace["branch"] = "small-decomposition"
        return 1, trace
    base = s.base
    if isinstance(base, Good):
        trace["branch"] = "good"
        return 1, trace
    if isinstance(base, SplitMult):
        trace["branch"] = "split-multiplicative"
        trace["cancelled_ord_parity"] = valuation(base.n, s.p) % 2
        return -1, trace
    if isinstance(base, NonsplitMult):
        trace["branch"] = "nonsplit-multiplicative"
        if s.I_v.kind == "cyclic":
            trace["cancelled_ord_parity"] = valuation(base.n, s.p) % 2
            return -1, trace
        return 1, trace
    if isinstance(base, AdditivePotMult):
        trace["branch"] = "additive-pot-multiplicative"
        trace["eta_equals_chi"] = s.eta_chi_agree()
        if s.I_v.kind == "dihedral" and s.eta_equals_chi:
            trace["cancelled_ord_parity"] = valuation(base.n, s.p) % 2
            return -1, trace
        return 1, trace
    # additive, potentially good
    trace["branch"] = "additive-pot-good"
    if s.I_v.kind == "cyclic":
        return 1, trace
    # I_v dihedral forces ell = p: the period floors survive
    if s.r % 2 == 0:
        trace["floor_exponent"] = 0
        return 1, trace
    exponent = (base.delta * s.p) // 6 - base.delta // 6
    trace["floor_exponent"] = exponent
    return (-1 if exponent % 2 else 1), trace


def w_ratio(setting: LocalSetting) -> tuple[int, dict]:
    """Ratio of local root numbers across the dihedral twist, plus a
    branch trace."""
    s = setting
    trace: dict = {"G_v": s.G_v.label, "I_v": s.I_v.label}
    if s.G_v.kind != "dihedral":
        trace["branch"] = "small-decomposition"
        return 1, trace
    base = s.base
    if isinstance(base, Good):
        trace["branch"] = "good"
        return 1, trace
    chi = s.chi_class()
    if chi is not None:
        # potentially multiplicative: -1 exactly when chi is trivial or eta_v
        trace["branch"] = "pot-multiplicative"
        trace["chi_class"] = chi.value
        trace["eta_class"] = s.eta_class().value
        agree = s.eta_chi_agree()
        trace["eta_equals_chi"] = agree
        sign = -1 if (chi is QuadCharClass.TRIVIAL or agree) else 1
        return sign, trace
    # additive, potentially good
    trace["branch"] = "additive-pot-good"
    if s.ell != s.p or s.I_v.kind != "dihedral":
        return 1, trace
    e = ramification_degree_e(base.delta)
    trace["tame_order_e"] = e
    if s.r % 2 == 0:
        trace["epsilon"] = 1
        return 1, trace
    if e in (3, 6):
        eps = legendre(-3 % s.p, s.p)
    elif e == 4:
        eps = legendre(-1 % s.p, s.p)
    else:
        eps = 1
    trace["epsilon"] = eps
    # p is coprime to 12, hence +-1 mod e; the sign flips exactly at -1
    sign = 1 if s.p % e == 1 % e else -1
    assert sign == eps, "epsilon factor disagrees with the residue rule"
    return sign, trace


@dataclass(frozen=True)
class LocalVerdict:
    setting: LocalSetting
    c_side: int
    w_side: int
    agree: bool
    c_trace: dict = field(compare=False)
    w_trace: dict = field(compare=False)


def verify_local(setting: LocalSetting) -> LocalVerdict:
    c, ct = c_parity(setting)
    w, wt = w_ratio(setting)
    return LocalVerdict(setting, c, w, c == w, ct, wt)


# --- enumeration -----------------------------------------------------------

_PAIRS = ((TRIVIAL, TRIVIAL), (ORDER2, TRIVIAL), (ORDER2, ORDER2),
          (CYCLIC, TRIVIAL), (CYCLIC, CYCLIC), (DIHEDRAL, CYCLIC),
          (DIHEDRAL, DIHEDRAL))


def enumerate_settings(p: int, *, ell_values=(2, 3, 5, 7, 11, 13),
                       r_values=(1, 2), n_max: int = 10,
                       deltas=POT_GOOD_DELTAS,
                       mode: str = "permissive") -> list[LocalSetting]:
    """All admissible local settings over the given bounds, in a fixed
    deterministic order.

    mode "strict" additionally drops settings whose potential-good residue
    class p mod e falls outside {+1, -1}; since (Z/e)* = {+1, -1} for
    every e arising from the delta list, the filter provably never fires,
    and the mode exists so that the claim is executable.
    """
    if mode not in ("permissive", "strict"):
        raise ValueError(f"unknown mode {mode!r}")
    ells = sorted(set(ell_values) | {p})
    out: list[LocalSetting] = []
    for ell in ells:
        for r in r_values:
            for G_v, I_v in _PAIRS:
                if I_v.kind == "dihedral" and ell != p:
                    continue
                bases: list[tuple[ReductionDescriptor, tuple[bool | None, ...]]] = \
                    [(Good(), (None,))]
                for n in range(1, n_max + 1):
                    bases.append((SplitMult(n), (None,)))
                    bases.append((NonsplitMult(n), (None,)))
                for n in range(1, n_max + 1):
                    flags: tuple[bool | None, ...] = (None,)
                    if G_v.kind == "dihedral" and I_v.kind == "dihedral":
                        flags = (False, True)
                    bases.append((AdditivePotMult(n), flags))
                for delta in deltas:
                    bases.append((AdditivePotGood(delta), (None,)))
                for base, flags in bases:
                    for flag in flags:
                        s = LocalSetting(p=p, ell=ell, r=r, base=base,
                                         G_v=G_v, I_v=I_v, eta_equals_chi=flag)
                        if mode == "strict" and isinstance(base, AdditivePotGood):
                            e = ramification_degree_e(base.delta)
                            if p % e not in (1 % e, (e - 1) % e):
                                continue
                        out.append(s)
    return out


# --- the potential-good sign table -----------------------------------------

# rows: tame order e in (6, 4, 3, 2); columns: p mod 12 in (1, 5, 7, 11)
FROZEN_POT_GOOD_TABLE: dict[tuple[int, int], int] = {
    (6, 1): 1, (6, 5): -1, (6, 7): 1, (6, 11): -1,
    (4, 1): 1, (4, 5): 1, (4, 7): -1, (4, 11): -1,
    (3, 1): 1, (3, 5): -1, (3, 7): 1, (3, 11): -1,
    (2, 1): 1, (2, 5): 1, (2, 7): 1, (2, 11): 1,
}

_RESIDUE_REPS = {1: 13, 5: 5, 7: 7, 11: 11}


def pot_good_table(side: str) -> dict[tuple[int, int], int]:
    """The 4x4 sign table for odd-multiplicity potential good reduction at
    ell = p, generated from one of the engine's two closed forms
    (side "c" or side "w").  Every delta with the same tame order must
    agree, and the generator checks that."""
    if side not in ("c", "w"):
        raise ValueError(f"side must be 'c' or 'w', got {side!r}")
    table: dict[tuple[int, int], int] = {}
    for e_target in (6, 4, 3, 2):
        deltas = [d for d in POT_GOOD_DELTAS if ramification_degree_e(d) == e_target]
        for residue, p in _RESIDUE_REPS.items():
            signs = set()
            for delta in deltas:
                s = LocalSetting(p=p, ell=p, r=1, base=AdditivePotGood(delta),
                                 G_v=DIHEDRAL, I_v=DIHEDRAL)
                sign, _ = c_parity(s) if side == "c" else w_ratio(s)
                signs.add(sign)
            if len(signs) != 1:
                raise AssertionError(
                    f"deltas of tame order {e_target} disagree at p = {p}: {signs}")
            table[(e_target, residue)] = signs.pop()
    return table


# --- whole curves ----------------------------------------------------------

CompletionMap = dict[int, tuple[SubgroupTag, SubgroupTag, bool | None]]


@dataclass(frozen=True)
class GlobalVerdict:
    curve: WeierstrassCurve
    p: int
    locals: tuple[LocalVerdict, ...]
    c_product: int
    w_product: int
    agree: bool


def base_descriptor(curve: WeierstrassCurve, ell: int) -> ReductionDescriptor:
    """Reduction descriptor of the curve at ell, from Tate's algorithm."""
    data = local_reduction(curve, ell)
    if data.conductor_exp == 0:
        return Good()
    if data.reduction_class == "multiplicative":
        return SplitMult(data.delta) if data.split else NonsplitMult(data.delta)
    if potential_class(curve, ell) == "potentially multiplicative":
        n = valuation(curve.j_invariant.denominator, ell)
        return AdditivePotMult(n)
    return AdditivePotGood(data.delta)


def global_parity(curve: WeierstrassCurve, p: int, completion: CompletionMap,
                  r: int = 1) -> GlobalVerdict:
    """Run the local identity at every bad prime of the curve and combine.

    completion maps each bad prime to (G_v, I_v, eta_equals_chi-or-None);
    entries for good primes are ignored, missing bad primes are an error.
    """
    bad = sorted(int(q) for q in factorint(abs(curve.discriminant)))
    verdicts = []
    for ell in bad:
        base = base_descriptor(curve, ell)
        if isinstance(base, Good):
            continue  # the model was not minimal at ell
        if ell not in completion:
            raise MissingCompletionError(
                f"no completion data for bad prime {ell}")
        G_v, I_v, flag = completion[ell]
        setting = LocalSetting(p=p, ell=ell, r=r, base=base,
                               G_v=G_v, I_v=I_v, eta_equals_chi=flag)
        verdicts.append(verify_local(setting))
    c_prod = 1
    w_prod = 1
    for v in verdicts:
        c_prod *= v.c_side
        w_prod *= v.w_side
    return GlobalVerdict(curve, p, tuple(verdicts), c_prod, w_prod,
                         all(v.agree for v in verdicts))
