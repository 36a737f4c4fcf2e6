"""Exact character theory of the dihedral groups D_{2p^n} (p an odd prime).

Character values live in Z[zeta_{p^n}], stored as integer vectors in the
power basis 1, zeta, ..., zeta^{phi-1} and reduced modulo the p^n-th
cyclotomic polynomial; inner products, inductions and restrictions are all
exact, with no floating point anywhere.

Group elements are pairs (i, e) meaning rotation^i * reflection^e, with
(i, e) * (j, f) = (i + j * (-1)^e, e xor f).  Conjugacy classes are indexed
canonically: identity, then the rotation pairs {s^j, s^-j} for
1 <= j <= (p^n - 1)/2, then the single class of all reflections.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from sympy import isprime


class InvalidGroupError(ValueError):
    """p is not an odd prime, or n < 1."""


class InvalidSubgroupError(ValueError):
    """Subgroup tag outside the lattice of D_{2p^n}."""


class GroupMismatchError(ValueError):
    """Operation mixing characters of unrelated groups."""


@dataclass(frozen=True)
class SubgroupTag:
    """One of the standard subgroups of D_{2p^n}, up to the fixed embedding.

    kind "trivial" or "order2" (the chosen reflection), or "cyclic" /
    "dihedral" with level k meaning C_{p^k} / D_{2p^k}.
    """
    kind: str
    level: int = 0

    def __post_init__(self):
        if self.kind in ("trivial", "order2"):
            if self.level != 0:
                raise InvalidSubgroupError(f"{self.kind} takes no level")
        elif self.kind in ("cyclic", "dihedral"):
            if self.level < 1:
                raise InvalidSubgroupError(f"{self.kind} needs level >= 1")
        else:
            raise InvalidSubgroupError(f"unknown subgroup kind {self.kind!r}")

    @property
    def label(self) -> str:
        if self.kind == "trivial":
            return "1"
        if self.kind == "order2":
            return "D2"
        base = "C" if self.kind == "cyclic" else "D2*"
        return f"{base}p^{self.level}" if self.level != 1 else ("Cp" if self.kind == "cyclic" else "D2p")


TRIVIAL = SubgroupTag("trivial")
ORDER2 = SubgroupTag("order2")


def cyclic_p_power(k: int) -> SubgroupTag:
    return SubgroupTag("cyclic", k)


def dihedral_p_power(k: int) -> SubgroupTag:
    return SubgroupTag("dihedral", k)


@dataclass(frozen=True)
class Cyclotomic:
    """Element of Z[zeta_{p^n}] in the power basis mod the cyclotomic polynomial."""
    p: int
    n: int
    coeffs: tuple[int, ...]

    @property
    def m(self) -> int:
        return self.p ** self.n

    @property
    def phi(self) -> int:
        return self.p ** self.n - self.p ** (self.n - 1)

    @staticmethod
    def _reduce(p: int, n: int, cs: list[int]) -> tuple[int, ...]:
        phi = p ** n - p ** (n - 1)
        step = p ** (n - 1)
        cs = list(cs)
        # x^phi = -(1 + x^step + x^(2 step) + ... + x^((p-2) step))
        while len(cs) > phi:
            top = cs.pop()
            if top:
                d = len(cs) - phi  # degree of the cofactor x^d
                for i in range(p - 1):
                    cs[d + i * step] -= top
        cs += [0] * (phi - len(cs))
        return tuple(cs)

    @classmethod
    def make(cls, p: int, n: int, cs: list[int]) -> "Cyclotomic":
        return cls(p, n, cls._reduce(p, n, cs))

    @classmethod
    def integer(cls, p: int, n: int, value: int) -> "Cyclotomic":
        return cls.make(p, n, [value])

    @classmethod
    def zeta_power(cls, p: int, n: int, k: int) -> "Cyclotomic":
        k %= p ** n
        return cls.make(p, n, [0] * k + [1])

    def _check(self, other: "Cyclotomic"):
        if (self.p, self.n) != (other.p, other.n):
            raise GroupMismatchError("cyclotomic values from different rings")

    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._check(other)
        return Cyclotomic(self.p, self.n,
                          tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._check(other)
        return Cyclotomic(self.p, self.n,
                          tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.p, self.n, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclotomic(self.p, self.n, tuple(a * other for a in self.coeffs))
        self._check(other)
        out = [0] * (2 * self.phi - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Cyclotomic.make(self.p, self.n, out)

    __rmul__ = __mul__

    def conj(self) -> "Cyclotomic":
        """Complex conjugation zeta -> zeta^-1."""
        m = self.m
        out = [0] * m
        out[0] = self.coeffs[0]
        for i, a in enumerate(self.coeffs[1:], start=1):
            out[m - i] += a
        return Cyclotomic.make(self.p, self.n, out)

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> int:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def divide_exact(self, d: int) -> "Cyclotomic":
        if any(c % d for c in self.coeffs):
            raise ValueError(f"coefficients not divisible by {d}")
        return Cyclotomic(self.p, self.n, tuple(c // d for c in self.coeffs))

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                z = "z" if i == 1 else f"z^{i}"
                if c == 1:
                    terms.append(z)
                elif c == -1:
                    terms.append(f"-{z}")
                else:
                    terms.append(f"{c}{z}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


class DihedralContext:
    """The group D_{2p^n} together with its cyclotomic value ring."""

    def __init__(self, p: int, n: int = 1):
        if not isinstance(p, int) or p % 2 == 0 or not isprime(p):
            raise InvalidGroupError(f"p must be an odd prime, got {p}")
        if not isinstance(n, int) or n < 1:
            raise InvalidGroupError(f"n must be a positive integer, got {n}")
        self.p = p
        self.n = n
        self.m = p ** n

    def __eq__(self, other):
        return isinstance(other, DihedralContext) and (self.p, self.n) == (other.p, other.n)

    def __hash__(self):
        return hash(("DihedralContext", self.p, self.n))

    def __repr__(self):
        return f"DihedralContext(p={self.p}, n={self.n})"

    # group element helpers ------------------------------------------------
    def mul(self, g, h):
        i, e = g
        j, f = h
        return ((i + (j if e == 0 else -j)) % self.m, e ^ f)

    def inv(self, g):
        i, e = g
        return ((-i) % self.m, 0) if e == 0 else (i, 1)

    # values ---------------------------------------------------------------
    def integer(self, v: int) -> Cyclotomic:
        return Cyclotomic.integer(self.p, self.n, v)

    def zeta(self, k: int) -> Cyclotomic:
        return Cyclotomic.zeta_power(self.p, self.n, k)

    # subgroups ------------------------------------------------------------
    def subgroup(self, tag: SubgroupTag) -> "Subgroup":
        if tag.kind in ("cyclic", "dihedral") and tag.level > self.n:
            raise InvalidSubgroupError(f"{tag} does not fit inside D_2p^{self.n}")
        return Subgroup(self, tag)

    def full(self) -> "Subgroup":
        return self.subgroup(dihedral_p_power(self.n))


class Subgroup:
    """A standard subgroup with its own canonical conjugacy classes."""

    def __init__(self, ctx: DihedralContext, tag: SubgroupTag):
        self.ctx = ctx
        self.tag = tag

    def __eq__(self, other):
        return (isinstance(other, Subgroup)
                and self.ctx == other.ctx and self.tag == other.tag)

    def __hash__(self):
        return hash((self.ctx, self.tag))

    def __repr__(self):
        return f"Subgroup({self.ctx!r}, {self.tag.label})"

    @cached_property
    def elements(self) -> tuple:
        ctx = self.ctx
        if self.tag.kind == "trivial":
            return ((0, 0),)
        if self.tag.kind == "order2":
            return ((0, 0), (0, 1))
        step = ctx.p ** (ctx.n - self.tag.level)
        rot = [(i * step % ctx.m, 0) for i in range(ctx.p ** self.tag.level)]
        if self.tag.kind == "cyclic":
            return tuple(rot)
        return tuple(rot + [(i, 1) for i, _ in rot])

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def class_reps(self) -> tuple:
        ctx = self.ctx
        kind = self.tag.kind
        if kind == "trivial":
            return ((0, 0),)
        if kind == "order2":
            return ((0, 0), (0, 1))
        step = ctx.p ** (ctx.n - self.tag.level)
        mk = ctx.p ** self.tag.level
        if kind == "cyclic":
            return tuple((i * step % ctx.m, 0) for i in range(mk))
        reps = [(0, 0)]
        reps += [(j * step % ctx.m, 0) for j in range(1, (mk - 1) // 2 + 1)]
        reps.append((0, 1))
        return tuple(reps)

    @cached_property
    def class_sizes(self) -> tuple[int, ...]:
        kind = self.tag.kind
        if kind == "trivial":
            return (1,)
        if kind == "order2":
            return (1, 1)
        mk = self.ctx.p ** self.tag.level
        if kind == "cyclic":
            return (1,) * mk
        return (1,) + (2,) * ((mk - 1) // 2) + (mk,)

    def class_index(self, g) -> int:
        i, e = g
        if g not in self.element_set:
            raise GroupMismatchError(f"{g} not in subgroup {self.tag.label}")
        kind = self.tag.kind
        if kind == "trivial":
            return 0
        if kind == "order2":
            return e
        ctx = self.ctx
        step = ctx.p ** (ctx.n - self.tag.level)
        mk = ctx.p ** self.tag.level
        if kind == "cyclic":
            return (i // step) % mk
        if e == 1:
            return 1 + (mk - 1) // 2
        j = (i // step) % mk
        j = min(j, mk - j)
        return j

    def contains(self, other: "Subgroup") -> bool:
        return other.element_set <= self.element_set


@dataclass(frozen=True)
class VirtualCharacter:
    """Exact class function with integer-combination-of-irreducibles semantics."""
    group: Subgroup
    values: tuple[Cyclotomic, ...]

    def __post_init__(self):
        if len(self.values) != len(self.group.class_reps):
            raise GroupMismatchError("value list does not match class count")

    @property
    def degree(self) -> int:
        return self.values[0].rational_value()

    def value_at(self, g) -> Cyclotomic:
        return self.values[self.group.class_index(g)]

    def _check(self, other: "VirtualCharacter"):
        if self.group != other.group:
            raise GroupMismatchError("characters live on different groups")

    def __add__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        self._check(other)
        return VirtualCharacter(self.group,
                                tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        self._check(other)
        return VirtualCharacter(self.group,
                                tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "VirtualCharacter":
        return VirtualCharacter(self.group, tuple(-a for a in self.values))

    def __mul__(self, k: int) -> "VirtualCharacter":
        return VirtualCharacter(self.group, tuple(v * k for v in self.values))

    __rmul__ = __mul__


# ---------------------------------------------------------------------------

def irreducibles(ctx: DihedralContext) -> list[VirtualCharacter]:
    """All irreducible characters of D_{2p^n}: trivial, eta, then the
    two-dimensional I(chi_k) for 1 <= k <= (p^n - 1)/2."""
    G = ctx.full()
    one = ctx.integer(1)
    zero = ctx.integer(0)
    nrot = (ctx.m - 1) // 2
    out = [VirtualCharacter(G, tuple([one] * (nrot + 1) + [one])),
           VirtualCharacter(G, tuple([one] * (nrot + 1) + [-one]))]
    for k in range(1, nrot + 1):
        vals = [ctx.integer(2)]
        vals += [ctx.zeta(k * j) + ctx.zeta(-k * j) for j in range(1, nrot + 1)]
        vals.append(zero)
        out.append(VirtualCharacter(G, tuple(vals)))
    return out


def eta(ctx: DihedralContext) -> VirtualCharacter:
    return irreducibles(ctx)[1]


def two_dim(ctx: DihedralContext, k: int) -> VirtualCharacter:
    """I(chi_k) for 1 <= k <= (p^n - 1)/2."""
    if not 1 <= k <= (ctx.m - 1) // 2:
        raise ValueError(f"k must lie in 1..{(ctx.m - 1) // 2}, got {k}")
    return irreducibles(ctx)[1 + k]


def cyclic_characters(ctx: DihedralContext, level: int) -> list[VirtualCharacter]:
    """The p^level characters of the cyclic subgroup C_{p^level}."""
    H = ctx.subgroup(cyclic_p_power(level))
    mk = ctx.p ** level
    lift = ctx.p ** (ctx.n - level)  # zeta_{p^level} = zeta_{p^n}^lift
    out = []
    for t in range(mk):
        vals = tuple(ctx.zeta(t * i * lift) for i in range(mk))
        out.append(VirtualCharacter(H, vals))
    return out


def inner_product(f1: VirtualCharacter, f2: VirtualCharacter) -> int:
    """<f1, f2> = (1/|H|) sum f1(g) conj(f2(g)); exact, and an integer for
    virtual characters."""
    f1._check(f2)
    H = f1.group
    total = None
    for size, a, b in zip(H.class_sizes, f1.values, f2.values):
        term = (a * b.conj()) * size
        total = term if total is None else total + term
    total = total.divide_exact(H.order)
    return total.rational_value()


def restrict(chi: VirtualCharacter, H: Subgroup) -> VirtualCharacter:
    if not chi.group.contains(H):
        raise GroupMismatchError(f"{H.tag.label} is not inside {chi.group.tag.label}")
    return VirtualCharacter(H, tuple(chi.value_at(g) for g in H.class_reps))


def induce(chi: VirtualCharacter, G: Subgroup) -> VirtualCharacter:
    """Induction from chi.group up to G by the elementwise mass formula."""
    H = chi.group
    if not G.contains(H):
        raise GroupMismatchError(f"{H.tag.label} is not inside {G.tag.label}")
    ctx = G.ctx
    hset = H.element_set
    vals = []
    for g in G.class_reps:
        total = ctx.integer(0)
        for x in G.elements:
            y = ctx.mul(ctx.mul(x, g), ctx.inv(x))
            if y in hset:
                total = total + chi.value_at(y)
        vals.append(total.divide_exact(H.order))
    return VirtualCharacter(G, tuple(vals))


def verify_reduction_identity(p: int, n: int) -> bool:
    """Check Ind_{D_{2p^{n-1}}}^{D_{2p^n}} Res I(chi) = sum of the I(chi0)
    over the p characters chi0 of C_{p^n} restricting to chi on C_{p^{n-1}},
    for every injective chi (index coprime to p).  Needs n >= 2."""
    if n < 2:
        raise InvalidGroupError("the reduction identity needs n >= 2")
    ctx = DihedralContext(p, n)
    G = ctx.full()
    H = ctx.subgroup(dihedral_p_power(n - 1))
    m = ctx.m
    half = (m - 1) // 2
    step = p ** (n - 1)

    def fold(k):
        k %= m
        return min(k, m - k)

    for k in range(1, half + 1):
        if k % p == 0:
            continue
        sigma = restrict(two_dim(ctx, k), H)
        lhs = induce(sigma, G)
        rhs = None
        for t in range(p):
            term = two_dim(ctx, fold(k + t * step))
            rhs = term if rhs is None else rhs + term
        if lhs != rhs:
            return False
    return True
