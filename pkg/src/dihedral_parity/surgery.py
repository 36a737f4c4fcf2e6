"""Curve surgery: rewrite an integral model so that one chosen prime p0
keeps its exact local reduction data while every other place becomes
semistable, with a designated auxiliary prime v turning (split)
multiplicative.

The construction shifts coefficients by CRT-chosen amounts:

  step 1  a1 += d1   d1 = 0 mod p0^n, makes a1 odd (when p0 != 2) so 2
                     never divides c4, and a1 = 0 mod v;
  step 2  a2 += d2   a2 = 1 mod v, and (when 3 is not p0 or v) b2 = 1
          a3 += d3   mod 3 so 3 never divides c4; a3 = a4 = 0 mod v;
          a4 += d4   all shifts vanish mod p0^n; a small bump on d4
                     avoids the degenerate c4 = 0;
  step 3  a6 += c    for each prime q of c4 outside {2, 3, p0, v}, a
                     residue chosen through the exact quadratic behaviour
                     Delta(a6 + c) - Delta(a6) = c (gamma - 432 c)
                     forces q away from Delta; a6 = 0 mod v completes the
                     nodal fibre at v.

After this, gcd(c4, Delta) is a pure power of p0, which certifies
semistability everywhere outside p0 without factoring the (typically
enormous) new discriminant.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from sympy import factorint, isprime

from .tate import local_reduction, valuation
from .weierstrass import A6_QUADRATIC_COEFF, WeierstrassCurve

N_CAP = 4096


class NonCoprimeModuliError(ValueError):
    """CRT moduli share a common factor."""


class SurgeryFailedError(RuntimeError):
    """The construction could not reach a certified result."""


def crt(congruences) -> tuple[int, int]:
    """Solve x = r_i (mod m_i) for pairwise coprime moduli; returns
    (x, product of moduli) with 0 <= x < product."""
    x, modulus = 0, 1
    for m, r in congruences:
        if m < 1:
            raise ValueError(f"modulus must be positive, got {m}")
        g = gcd(modulus, m)
        if g != 1:
            raise NonCoprimeModuliError(f"moduli share the factor {g}")
        diff = (r - x) % m
        x += modulus * ((diff * pow(modulus % m, -1, m)) % m)
        modulus *= m
    return x % modulus, modulus


# invariant formulas on raw tuples: intermediate models may be singular,
# so they cannot go through the validating curve constructor
def _raw_c4(a1: int, a2: int, a3: int, a4: int) -> int:
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    return b2 * b2 - 24 * b4


def _raw_delta(a1: int, a2: int, a3: int, a4: int, a6: int) -> int:
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def _raw_gamma(a1: int, a2: int, a3: int, a4: int, a6: int) -> int:
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    beta = -b2 ** 3 - 216 * a3 * a3 + 36 * b2 * b4
    return beta + 2 * A6_QUADRATIC_COEFF * a6


@dataclass(frozen=True)
class SurgeryPlan:
    """Full trace of one surgery run."""
    original: WeierstrassCurve
    p0: int
    v: int
    n: int
    d1: int
    d2: int
    d3: int
    d4: int
    c: int
    s_primes: tuple[int, ...]
    after_step1: tuple[int, int, int, int, int]
    after_step2: tuple[int, int, int, int, int]
    final: WeierstrassCurve


def _attempt(curve: WeierstrassCurve, p0: int, v: int, n: int) -> SurgeryPlan:
    a1, a2, a3, a4, a6 = curve.coefficients()
    P = p0 ** n

    cong1 = [(P, 0), (v, (-a1) % v)]
    if p0 != 2:
        cong1.append((2, (1 - a1) % 2))
    d1, _ = crt(cong1)
    a1n = a1 + d1

    cong2 = [(P, 0), (v, (1 - a2) % v)]
    if p0 != 3 and v != 3:
        cong2.append((3, (1 - a1n * a1n - a2) % 3))
    d2, _ = crt(cong2)
    a2n = a2 + d2

    d3, _ = crt([(P, 0), (v, (-a3) % v)])
    a3n = a3 + d3

    d4, m4 = crt([(P, 0), (v, (-a4) % v)])
    a4n = a4 + d4
    bumps = 0
    while _raw_c4(a1n, a2n, a3n, a4n) == 0:
        bumps += 1
        if bumps > 2:
            raise SurgeryFailedError("could not steer away from c4 = 0")
        d4 += m4
        a4n = a4 + d4

    c4p = _raw_c4(a1n, a2n, a3n, a4n)
    deltap = _raw_delta(a1n, a2n, a3n, a4n, a6)
    gamma = _raw_gamma(a1n, a2n, a3n, a4n, a6)
    s_primes = tuple(sorted(int(q) for q in factorint(abs(c4p))
                            if q not in (2, 3, p0, v)))
    cong3 = [(P, 0), (v, (-a6) % v)]
    for q in s_primes:
        if deltap % q:
            cong3.append((q, 0))  # q already misses Delta; keep it that way
        else:
            g = gamma % q
            alpha = next(a for a in range(1, 4) if a % q not in (0, g))
            inv_k = pow(A6_QUADRATIC_COEFF % q, -1, q)
            cong3.append((q, ((alpha - gamma) * inv_k) % q))
    c, modulus = crt(cong3)
    a6n = a6 + c
    bumps = 0
    while _raw_delta(a1n, a2n, a3n, a4n, a6n) == 0:
        bumps += 1
        if bumps > 3:
            raise SurgeryFailedError("could not steer away from Delta = 0")
        c += modulus
        a6n = a6 + c

    return SurgeryPlan(
        original=curve, p0=p0, v=v, n=n, d1=d1, d2=d2, d3=d3, d4=d4, c=c,
        s_primes=s_primes,
        after_step1=(a1n, a2, a3, a4, a6),
        after_step2=(a1n, a2n, a3n, a4n, a6),
        final=WeierstrassCurve(a1n, a2n, a3n, a4n, a6n))


def closeness_check(original: WeierstrassCurve, surgered: WeierstrassCurve,
                    p0: int) -> bool:
    """The two curves have identical local data at p0: Kodaira type,
    minimal discriminant valuation, Tamagawa number, conductor exponent."""
    a = local_reduction(original, p0)
    b = local_reduction(surgered, p0)
    return ((a.kodaira, a.delta, a.tamagawa, a.conductor_exp)
            == (b.kodaira, b.delta, b.tamagawa, b.conductor_exp))


def make_semistable(curve: WeierstrassCurve, p0: int, v: int,
                    n: int | None = None) -> SurgeryPlan:
    """Run the surgery.  n is the p0-adic agreement depth; by default it
    starts just above the discriminant valuation at p0 and doubles until
    the p0 data survives unchanged (capped)."""
    if not isprime(p0):
        raise ValueError(f"p0 must be prime, got {p0}")
    if not isprime(v) or v == 2 or v == p0:
        raise ValueError(f"v must be an odd prime different from p0, got {v}")
    if n is not None:
        plan = _attempt(curve, p0, v, n)
        if not closeness_check(curve, plan.final, p0):
            raise SurgeryFailedError(
                f"local data at {p0} not preserved with n = {n}")
        return plan
    depth = max(8, valuation(abs(curve.discriminant), p0) + 3)
    while depth <= N_CAP:
        plan = _attempt(curve, p0, v, depth)
        if closeness_check(curve, plan.final, p0):
            return plan
        depth *= 2
    raise SurgeryFailedError(f"no agreement depth up to {N_CAP} preserved the "
                             f"local data at {p0}")


@dataclass(frozen=True)
class SurgeryCertificate:
    ok: bool
    p0_match: bool
    p0_before: tuple[str, int, int, int]
    p0_after: tuple[str, int, int, int]
    v_class: str
    v_split: str
    residual_gcd: int
    s_primes: tuple[int, ...]


def certify(plan: SurgeryPlan) -> SurgeryCertificate:
    """Independent check of the surgery outcome.

    Verifies the p0 data matched, the v fibre is multiplicative, and that
    gcd(c4, Delta) of the result is a pure p0 power, which rules out
    additive reduction anywhere else without factoring Delta.
    """
    before = local_reduction(plan.original, plan.p0)
    after = local_reduction(plan.final, plan.p0)
    p0_match = ((before.kodaira, before.delta, before.tamagawa, before.conductor_exp)
                == (after.kodaira, after.delta, after.tamagawa, after.conductor_exp))
    vdata = local_reduction(plan.final, plan.v)
    g = gcd(plan.final.c4, plan.final.discriminant)
    while g % plan.p0 == 0:
        g //= plan.p0
    ok = p0_match and vdata.reduction_class == "multiplicative" and g == 1
    return SurgeryCertificate(
        ok=ok, p0_match=p0_match,
        p0_before=(before.kodaira, before.delta, before.tamagawa, before.conductor_exp),
        p0_after=(after.kodaira, after.delta, after.tamagawa, after.conductor_exp),
        v_class=vdata.reduction_class, v_split=vdata.split_label,
        residual_gcd=g, s_primes=plan.s_primes)
