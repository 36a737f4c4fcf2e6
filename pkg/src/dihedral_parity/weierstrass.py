"""Exact arithmetic on integral Weierstrass models y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.

Everything here is computed over Z (or Fraction for j), never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class SingularModelError(ValueError):
    """The coefficients define a singular cubic (discriminant zero)."""


class InvalidTransformError(ValueError):
    """Coordinate change with u = 0, or one whose image is not integral."""


# Coefficient of a6^2 in Delta viewed as a quadratic polynomial in a6.
# Delta = alpha + beta*a6 + A6_QUADRATIC_COEFF*a6^2 with the other four
# coefficients held fixed; see a6_shift_delta below.
A6_QUADRATIC_COEFF = -432


@dataclass(frozen=True)
class WeierstrassCurve:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"coefficient {name} must be an int, got {v!r}")
        if self.discriminant == 0:
            raise SingularModelError(f"singular model {self.coefficients()}")

    def coefficients(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self) -> int:
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self) -> int:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> int:
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self) -> int:
        return (self.a1 * self.a1 * self.a6 + 4 * self.a2 * self.a6
                - self.a1 * self.a3 * self.a4 + self.a2 * self.a3 * self.a3
                - self.a4 * self.a4)

    @property
    def c4(self) -> int:
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self) -> int:
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j_invariant(self) -> Fraction:
        return Fraction(self.c4 ** 3, self.discriminant)

    def __repr__(self) -> str:
        return f"WeierstrassCurve{self.coefficients()}"


@dataclass(frozen=True)
class InvariantSet:
    b2: int
    b4: int
    b6: int
    b8: int
    c4: int
    c6: int
    discriminant: int
    j: Fraction


def invariants(curve: WeierstrassCurve) -> InvariantSet:
    """All standard b/c-invariants, the discriminant, and j, exactly."""
    return InvariantSet(curve.b2, curve.b4, curve.b6, curve.b8,
                        curve.c4, curve.c6, curve.discriminant, curve.j_invariant)


def transform(curve: WeierstrassCurve, u, r, s, t) -> WeierstrassCurve:
    """Apply the coordinate change x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.

    The parameters may be rational, but the image model must again be
    integral; otherwise InvalidTransformError is raised.  Under this change
    Delta scales by u^-12 and c4 by u^-4.
    """
    u, r, s, t = Fraction(u), Fraction(r), Fraction(s), Fraction(t)
    if u == 0:
        raise InvalidTransformError("u = 0 is not an admissible transform")
    a1, a2, a3, a4, a6 = curve.coefficients()
    na1 = (a1 + 2 * s) / u
    na2 = (a2 - s * a1 + 3 * r - s * s) / u ** 2
    na3 = (a3 + r * a1 + 2 * t) / u ** 3
    na4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4
    na6 = (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6
    new = (na1, na2, na3, na4, na6)
    if any(x.denominator != 1 for x in new):
        raise InvalidTransformError(
            f"transform (u={u}, r={r}, s={s}, t={t}) gives a non-integral model")
    return WeierstrassCurve(*(int(x) for x in new))


def a6_shift_linear_coeff(curve: WeierstrassCurve) -> int:
    """beta: the coefficient of a6 in Delta as a quadratic polynomial in a6."""
    a3 = curve.a3
    b2 = curve.a1 * curve.a1 + 4 * curve.a2
    b4 = 2 * curve.a4 + curve.a1 * curve.a3
    return -b2 ** 3 - 216 * a3 * a3 + 36 * b2 * b4


def a6_shift_gamma(curve: WeierstrassCurve) -> int:
    """gamma = beta + 2 * A6_QUADRATIC_COEFF * a6, so that shifting a6 by c
    changes Delta by exactly c * (gamma + A6_QUADRATIC_COEFF * c)."""
    return a6_shift_linear_coeff(curve) + 2 * A6_QUADRATIC_COEFF * curve.a6


def a6_shift_delta(curve: WeierstrassCurve, c: int) -> int:
    """Delta(a6 + c) - Delta(a6), computed from the closed form."""
    return c * (a6_shift_gamma(curve) + A6_QUADRATIC_COEFF * c)
