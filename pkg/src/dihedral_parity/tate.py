"""Reduction data of an integral model at a prime: Kodaira symbol, minimal
discriminant valuation, Tamagawa number, conductor exponent, split type.

The step chain is the classical reduction-type algorithm run entirely in
exact arithmetic.  Singular points come from closed forms for primes >= 5
and exhaustive residue-field search at 2 and 3; rational-root counts of the
auxiliary cubic and quadratics use gcds with X^l - X over F_l, so there is
no floating point and no randomness anywhere.  The conductor exponent is
read off from the valuation of the minimal discriminant and the component
count of the special fibre.
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy import isprime

from .weierstrass import WeierstrassCurve, transform

# Stand-in for the valuation of 0; larger than any valuation that can occur.
BIG = 10 ** 9


class NotApplicableError(ValueError):
    """Asked for a quantity (e.g. split type) outside its defining case."""


def valuation(x: int, ell: int) -> int:
    """ord_ell(x), with ord_ell(0) = BIG."""
    if x == 0:
        return BIG
    v = 0
    while x % ell == 0:
        x //= ell
        v += 1
    return v


def _inv(a: int, ell: int) -> int:
    return pow(a % ell, -1, ell)


def legendre(a: int, ell: int) -> int:
    """Legendre symbol (a / ell) for an odd prime ell."""
    a %= ell
    if a == 0:
        return 0
    r = pow(a, (ell - 1) // 2, ell)
    return 1 if r == 1 else -1


# ---------------------------------------------------------------------------
# Small exact polynomial arithmetic over F_ell (coefficient lists, low first).

def _ptrim(a: list[int], ell: int) -> list[int]:
    a = [x % ell for x in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], b: list[int], ell: int) -> list[int]:
    a = _ptrim(list(a), ell)
    b = _ptrim(list(b), ell)
    inv_lead = _inv(b[-1], ell)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % ell
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[i + shift] = (a[i + shift] - coef * bc) % ell
        a = _ptrim(a, ell)
    return a


def _pmulmod(a: list[int], b: list[int], mod: list[int], ell: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ac in enumerate(a):
        if ac:
            for j, bc in enumerate(b):
                out[i + j] = (out[i + j] + ac * bc) % ell
    return _pmod(out, mod, ell)


def _pgcd(a: list[int], b: list[int], ell: int) -> list[int]:
    a = _ptrim(list(a), ell)
    b = _ptrim(list(b), ell)
    while b:
        a, b = b, _pmod(a, b, ell)
    if a:
        inv_lead = _inv(a[-1], ell)
        a = [x * inv_lead % ell for x in a]
    return a


def _rational_root_count(coeffs: list[int], ell: int) -> int:
    """Number of distinct roots in F_ell of the given polynomial."""
    f = _ptrim(list(coeffs), ell)
    if len(f) <= 1:
        return 0
    # X^ell mod f by square-and-multiply, then gcd(f, X^ell - X).
    result = [1]
    base = _pmod([0, 1], f, ell)
    e = ell
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, ell)
        base = _pmulmod(base, base, f, ell)
        e >>= 1
    # result - X
    m = max(len(result), 2)
    diff = list(result) + [0] * (m - len(result))
    diff[1] = (diff[1] - 1) % ell
    g = _pgcd(f, diff, ell)
    return max(len(g) - 1, 0)


def _quad_double_root(A: int, B: int, C: int, ell: int):
    """The double root of A Y^2 + B Y + C over F_ell, or None if separable.

    A must be a unit mod ell.
    """
    if ell == 2:
        if B % 2 != 0:
            return None
        return C * _inv(A, 2) % 2  # square roots are trivial in F_2
    disc = (B * B - 4 * A * C) % ell
    if disc != 0:
        return None
    return -B * _inv(2 * A, ell) % ell


def _cubic_multiple_root(A: int, B: int, C: int, ell: int):
    """Multiple root of T^3 + A T^2 + B T + C over F_ell.

    Returns (root, multiplicity) with multiplicity in {2, 3}, or None when
    the cubic is separable over the algebraic closure.
    """
    A %= ell
    B %= ell
    C %= ell
    if ell <= 3:
        for t in range(ell):
            # multiplicity of t by repeated synthetic division
            q = [C, B, A, 1]
            mult = 0
            while True:
                rem = 0
                out = []
                for c in reversed(q):
                    rem = (rem * t + c) % ell
                    out.append(rem)
                if rem != 0:
                    break
                mult += 1
                q = list(reversed(out[:-1]))
                if len(q) == 1:
                    break
            if mult >= 2:
                return t, mult
        return None
    inv3 = _inv(3, ell)
    p_ = (B - A * A * inv3) % ell
    q_ = (C - A * B * inv3 + 2 * A * A * A * inv3 * inv3 * inv3) % ell
    if (4 * p_ ** 3 + 27 * q_ * q_) % ell != 0:
        return None
    if p_ == 0:
        s0, mult = 0, 3
    else:
        s0, mult = -3 * q_ * _inv(2 * p_, ell) % ell, 2
    return (s0 - A * inv3) % ell, mult


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalReductionData:
    prime: int
    kodaira: str
    delta: int              # valuation of the minimal discriminant
    tamagawa: int
    conductor_exp: int
    reduction_class: str    # "good" | "multiplicative" | "additive"
    split: bool | None      # None unless multiplicative
    minimal_model: WeierstrassCurve

    @property
    def split_label(self) -> str:
        if self.split is None:
            return "n/a"
        return "split" if self.split else "nonsplit"


def _curve_fns(E: WeierstrassCurve):
    a1, a2, a3, a4, a6 = E.coefficients()

    def f(x, y):
        return y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6

    def fx(x, y):
        return a1 * y - 3 * x * x - 2 * a2 * x - a4

    def fy(x, y):
        return 2 * y + a1 * x + a3

    return f, fx, fy


def _singular_point(E: WeierstrassCurve, ell: int) -> tuple[int, int]:
    """Coordinates mod ell of the unique singular point of the reduction."""
    f, fx, fy = _curve_fns(E)
    if ell <= 3:
        for x in range(ell):
            for y in range(ell):
                if f(x, y) % ell == 0 and fx(x, y) % ell == 0 and fy(x, y) % ell == 0:
                    return x, y
        raise RuntimeError(f"no singular point mod {ell}; model {E} inconsistent")
    # ell >= 5: complete the square; the singular u = 12x + b2 satisfies
    # u = -c6/c4 at a node and u = 0 at a cusp.
    c4, c6, b2 = E.c4, E.c6, E.b2
    if c4 % ell != 0:
        u0 = -c6 * _inv(c4, ell) % ell
    else:
        u0 = 0
    x0 = (u0 - b2) * _inv(12, ell) % ell
    y0 = -(E.a1 * x0 + E.a3) * _inv(2, ell) % ell
    if f(x0, y0) % ell or fx(x0, y0) % ell or fy(x0, y0) % ell:
        raise RuntimeError(f"singular point formula failed at {ell} for {E}")
    return x0, y0


def _arrange_for_star(E: WeierstrassCurve, ell: int) -> WeierstrassCurve:
    """Translate so that ell | a1, a2; ell^2 | a3, a4; ell^3 | a6.

    Valid once the II/III/IV tests have all failed on the model with its
    singular point at the origin.
    """
    if ell >= 5:
        s = -E.a1 * _inv(2, ell) % ell
        E = transform(E, 1, 0, s, 0)
        t = -E.a3 * _inv(2, ell * ell) % (ell * ell)
        E = transform(E, 1, 0, 0, t)
    else:
        found = None
        for s in range(ell):
            for t in range(ell ** 3):
                cand = transform(E, 1, 0, s, t)
                if (cand.a1 % ell == 0 and cand.a2 % ell == 0
                        and cand.a3 % ell ** 2 == 0 and cand.a4 % ell ** 2 == 0
                        and cand.a6 % ell ** 3 == 0):
                    found = cand
                    break
            if found:
                break
        if found is None:
            raise RuntimeError(f"star arrangement failed at {ell} for {E}")
        E = found
    assert (E.a1 % ell == 0 and E.a2 % ell == 0 and E.a3 % ell ** 2 == 0
            and E.a4 % ell ** 2 == 0 and E.a6 % ell ** 3 == 0)
    return E


def local_reduction(curve: WeierstrassCurve, ell: int) -> LocalReductionData:
    """Full reduction data of curve at the prime ell."""
    if not isinstance(ell, int) or ell < 2 or not isprime(ell):
        raise ValueError(f"ell must be prime, got {ell}")
    E = curve

    def out(kodaira, delta, tamagawa, conductor, cls, split, model):
        return LocalReductionData(ell, kodaira, delta, tamagawa, conductor,
                                  cls, split, model)

    while True:
        disc = E.discriminant
        n = valuation(disc, ell)
        if n == 0:
            return out("I0", 0, 1, 0, "good", None, E)

        x0, y0 = _singular_point(E, ell)
        E = transform(E, 1, x0, 0, y0)

        if E.b2 % ell != 0:
            # Node with independent tangents: type I_n.  Split iff the
            # tangent-cone quadratic T^2 + a1 T - a2 factors over F_ell.
            if ell == 2:
                split = any((t * t + E.a1 * t - E.a2) % 2 == 0 for t in range(2))
            else:
                split = legendre(E.b2, ell) == 1
            if split:
                c = n
            else:
                c = 2 if n % 2 == 0 else 1
            return out(f"I{n}", n, c, 1, "multiplicative", split, E)

        if valuation(E.a6, ell) < 2:
            return out("II", n, 1, n, "additive", None, E)
        if valuation(E.b8, ell) < 3:
            return out("III", n, 2, n - 1, "additive", None, E)
        if valuation(E.b6, ell) < 3:
            a3d, a6d = E.a3 // ell, E.a6 // ell ** 2
            c = 3 if _rational_root_count([-a6d, a3d, 1], ell) > 0 else 1
            return out("IV", n, c, n - 2, "additive", None, E)

        E = _arrange_for_star(E, ell)
        A, B, C = E.a2 // ell, E.a4 // ell ** 2, E.a6 // ell ** 3
        mult = _cubic_multiple_root(A, B, C, ell)

        if mult is None:
            # P separable: type I0*, component group from its rational roots.
            c = 1 + _rational_root_count([C, B, A, 1], ell)
            return out("I0*", n, c, n - 4, "additive", None, E)

        root, m = mult
        if m == 2:
            E = transform(E, 1, ell * root, 0, 0)
            k = 1
            while True:
                if k > n:
                    raise RuntimeError(f"runaway I_k* loop at {ell} for {curve}")
                if k % 2 == 1:
                    r_ = (k + 3) // 2
                    b = E.a3 // ell ** r_
                    cc = E.a6 // ell ** (k + 3)
                    dr = _quad_double_root(1, b, -cc, ell)
                    if dr is None:
                        nroots = _rational_root_count([-cc, b, 1], ell)
                        c = 4 if nroots > 0 else 2
                        return out(f"I{k}*", n, c, n - 4 - k, "additive", None, E)
                    E = transform(E, 1, 0, 0, ell ** r_ * dr)
                else:
                    r_ = (k + 4) // 2
                    A2 = E.a2 // ell
                    b = E.a4 // ell ** r_
                    cc = E.a6 // ell ** (k + 3)
                    dr = _quad_double_root(A2, b, cc, ell)
                    if dr is None:
                        nroots = _rational_root_count([cc, b, A2], ell)
                        c = 4 if nroots > 0 else 2
                        return out(f"I{k}*", n, c, n - 4 - k, "additive", None, E)
                    E = transform(E, 1, ell ** (r_ - 1) * dr, 0, 0)
                k += 1

        # triple root: move it to T = 0 and test the IV*/III*/II* tail.
        E = transform(E, 1, ell * root, 0, 0)
        b, cc = E.a3 // ell ** 2, E.a6 // ell ** 4
        dr = _quad_double_root(1, b, -cc, ell)
        if dr is None:
            c = 3 if _rational_root_count([-cc, b, 1], ell) > 0 else 1
            return out("IV*", n, c, n - 6, "additive", None, E)
        E = transform(E, 1, 0, 0, ell ** 2 * dr)
        if valuation(E.a4, ell) < 4:
            return out("III*", n, 2, n - 7, "additive", None, E)
        if valuation(E.a6, ell) < 6:
            return out("II*", n, 1, n - 8, "additive", None, E)
        # Non-minimal: scale down by ell and start over.
        E = transform(E, ell, 0, 0, 0)


def kodaira_symbol(curve: WeierstrassCurve, ell: int) -> str:
    return local_reduction(curve, ell).kodaira


def tamagawa_number(curve: WeierstrassCurve, ell: int) -> int:
    return local_reduction(curve, ell).tamagawa


def conductor_exponent(curve: WeierstrassCurve, ell: int) -> int:
    return local_reduction(curve, ell).conductor_exp


def split_type(curve: WeierstrassCurve, ell: int) -> str:
    data = local_reduction(curve, ell)
    if data.reduction_class != "multiplicative":
        raise NotApplicableError(
            f"split type undefined: reduction at {ell} is {data.reduction_class}")
    return data.split_label


def potential_class(curve: WeierstrassCurve, ell: int) -> str:
    """"potentially good" or "potentially multiplicative" at ell.

    Decided by the sign of v_ell(j); invariant under rescaling, so no
    minimality is required of the input model.
    """
    c4 = curve.c4
    if c4 == 0:
        return "potentially good"
    vj = 3 * valuation(c4, ell) - valuation(curve.discriminant, ell)
    return "potentially multiplicative" if vj < 0 else "potentially good"
