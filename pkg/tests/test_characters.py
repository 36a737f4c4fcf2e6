import pytest

from dihedral_parity.characters import (Cyclotomic, DihedralContext,
                                        GroupMismatchError, InvalidGroupError,
                                        InvalidSubgroupError, ORDER2,
                                        SubgroupTag, TRIVIAL, VirtualCharacter,
                                        cyclic_characters, cyclic_p_power,
                                        dihedral_p_power, eta, induce,
                                        inner_product, irreducibles, restrict,
                                        two_dim, verify_reduction_identity)


# --- cyclotomic ring -------------------------------------------------------

def test_cyclotomic_reduction_rule():
    # z^4 = -(1 + z + z^2 + z^3) for p = 5
    z4 = Cyclotomic.zeta_power(5, 1, 4)
    assert z4.coeffs == (-1, -1, -1, -1)
    # z^5 = 1
    assert Cyclotomic.zeta_power(5, 1, 5) == Cyclotomic.integer(5, 1, 1)
    # for p^n = 25: z^20 = -(1 + z^5 + z^10 + z^15)
    z20 = Cyclotomic.zeta_power(5, 2, 20)
    want = [0] * 20
    for i in (0, 5, 10, 15):
        want[i] = -1
    assert z20.coeffs == tuple(want)


def test_cyclotomic_arithmetic():
    a = Cyclotomic.zeta_power(7, 1, 3)
    b = Cyclotomic.zeta_power(7, 1, 4)
    assert a * b == Cyclotomic.integer(7, 1, 1)
    assert (a + b).conj() == a + b  # z^3 + z^4 is conjugation-stable
    assert a.conj() == b
    full = sum((Cyclotomic.zeta_power(7, 1, k) for k in range(1, 7)),
               Cyclotomic.integer(7, 1, 0))
    assert full == Cyclotomic.integer(7, 1, -1)
    assert full.is_rational and full.rational_value() == -1
    assert not a.is_rational
    with pytest.raises(ValueError):
        a.rational_value()
    assert (a * 3).divide_exact(3) == a
    with pytest.raises(ValueError):
        (a * 3).divide_exact(2)
    with pytest.raises(GroupMismatchError):
        a + Cyclotomic.zeta_power(5, 1, 1)


# --- group and subgroup structure ------------------------------------------

def test_group_validation():
    for p, n in [(4, 1), (2, 1), (9, 1), (15, 1), (5, 0), (7, -1)]:
        with pytest.raises(InvalidGroupError):
            DihedralContext(p, n)
    ctx = DihedralContext(3, 1)  # odd primes below 5 are fine as groups
    assert ctx.m == 3


def test_subgroup_tags():
    with pytest.raises(InvalidSubgroupError):
        SubgroupTag("weird")
    with pytest.raises(InvalidSubgroupError):
        SubgroupTag("cyclic", 0)
    with pytest.raises(InvalidSubgroupError):
        SubgroupTag("trivial", 1)
    ctx = DihedralContext(5, 1)
    with pytest.raises(InvalidSubgroupError):
        ctx.subgroup(cyclic_p_power(2))  # does not fit in D_10


def test_subgroup_orders_and_classes():
    ctx = DihedralContext(5, 2)
    assert ctx.subgroup(TRIVIAL).order == 1
    assert ctx.subgroup(ORDER2).order == 2
    assert ctx.subgroup(cyclic_p_power(1)).order == 5
    assert ctx.subgroup(cyclic_p_power(2)).order == 25
    assert ctx.subgroup(dihedral_p_power(1)).order == 10
    G = ctx.full()
    assert G.order == 50
    assert len(G.class_reps) == 2 + (25 - 1) // 2
    assert sum(G.class_sizes) == 50
    # class map: s^3 and s^22 are conjugate, reflections fuse
    assert G.class_index((3, 0)) == G.class_index((22, 0))
    assert G.class_index((0, 1)) == G.class_index((7, 1))
    with pytest.raises(GroupMismatchError):
        ctx.subgroup(cyclic_p_power(1)).class_index((1, 0))  # not in C_5 <= D_50


def test_counts_degrees_sum_of_squares():
    for (p, n), want in [((5, 1), 4), ((7, 1), 5), ((5, 2), 14), ((3, 1), 3)]:
        ctx = DihedralContext(p, n)
        irr = irreducibles(ctx)
        assert len(irr) == want
        degs = [c.degree for c in irr]
        assert degs == [1, 1] + [2] * (want - 2)
        assert sum(d * d for d in degs) == 2 * p ** n


@pytest.mark.parametrize("p,n", [(5, 1), (7, 1), (5, 2)])
def test_orthogonality(p, n):
    irr = irreducibles(DihedralContext(p, n))
    for i, a in enumerate(irr):
        for j, b in enumerate(irr):
            assert inner_product(a, b) == (1 if i == j else 0)


def test_two_dim_values_are_real():
    for chi in irreducibles(DihedralContext(5, 2))[2:]:
        for v in chi.values:
            assert v == v.conj()


def test_induction_from_trivial_gives_regular_character():
    ctx = DihedralContext(5, 1)
    H = ctx.subgroup(TRIVIAL)
    reg = induce(VirtualCharacter(H, (ctx.integer(1),)), ctx.full())
    irr = irreducibles(ctx)
    total = None
    for c in irr:
        t = c * c.degree
        total = t if total is None else total + t
    assert reg == total
    assert reg.degree == 10


def test_induction_from_rotations():
    ctx = DihedralContext(5, 1)
    chars = cyclic_characters(ctx, 1)
    G = ctx.full()
    irr = irreducibles(ctx)
    assert induce(chars[0], G) == irr[0] + irr[1]  # 1 + eta
    for k in (1, 2):
        assert induce(chars[k], G) == two_dim(ctx, k)
    # folding: chi_k and chi_{p-k} induce the same character
    assert induce(chars[3], G) == two_dim(ctx, 2)
    assert induce(chars[4], G) == two_dim(ctx, 1)


def test_restriction_values():
    ctx = DihedralContext(5, 1)
    G = ctx.full()
    H2 = ctx.subgroup(ORDER2)
    assert restrict(eta(ctx), H2).values[1] == ctx.integer(-1)
    Cp = ctx.subgroup(cyclic_p_power(1))
    res = restrict(two_dim(ctx, 1), Cp)
    chars = cyclic_characters(ctx, 1)
    assert res == chars[1] + chars[4]
    with pytest.raises(GroupMismatchError):
        restrict(chars[1], H2)  # D_2 is not inside C_5


def test_frobenius_reciprocity_exhaustive_d50():
    ctx = DihedralContext(5, 2)
    G = ctx.full()
    girr = irreducibles(ctx)
    for level in (1, 2):
        H = ctx.subgroup(cyclic_p_power(level))
        for f in cyclic_characters(ctx, level):
            indf = induce(f, G)
            for g in girr:
                assert inner_product(indf, g) == inner_product(f, restrict(g, H))


def test_reduction_identity():
    assert verify_reduction_identity(5, 2) is True
    assert verify_reduction_identity(7, 2) is True
    with pytest.raises(InvalidGroupError):
        verify_reduction_identity(5, 1)


def test_character_mismatch_errors():
    c5 = irreducibles(DihedralContext(5, 1))[0]
    c7 = irreducibles(DihedralContext(7, 1))[0]
    with pytest.raises(GroupMismatchError):
        inner_product(c5, c7)
    with pytest.raises(GroupMismatchError):
        c5 + c7
    ctx = DihedralContext(5, 1)
    with pytest.raises(GroupMismatchError):
        VirtualCharacter(ctx.full(), (ctx.integer(1),))  # wrong arity
