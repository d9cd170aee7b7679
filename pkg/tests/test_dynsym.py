import pytest

import miczlab.dynsym as dy
import miczlab.sections as S
from miczlab.exact import GaussianRational, Q

I_ = GaussianRational(0, 1)


def test_eta_and_indices():
    assert dy.eta(-1) == 1 and dy.eta(0) == 1
    assert dy.eta(1) == -1 and dy.eta(4) == -1
    assert dy.generator_indices(1) == (-1, 0, 1, 2, 3, 4)


def test_jab_resolution():
    D = 3
    assert dy.jab(D, 1, 2) == (1, ("J", 1, 2))
    assert dy.jab(D, 2, 1) == (-1, ("J", 1, 2))
    assert dy.jab(D, 1, D + 1) == (1, ("A", 1))
    assert dy.jab(D, 1, -1) == (1, ("M", 1))
    assert dy.jab(D, 1, 0) == (1, ("G", 1))
    assert dy.jab(D, D + 1, -1) == (1, ("T",))
    assert dy.jab(D, -1, D + 1) == (-1, ("T",))
    assert dy.jab(D, -1, 0) == (1, ("Gm",))
    assert dy.jab(D, 2, 2) is None


def test_zero_generator_on_diagonal():
    forms = dy.build_generator(2, 2, 1, Q(1, 2))
    sec = dy.context_for(1, Q(1, 2)).term(1, u=-1)
    assert forms.expanded.apply(sec).is_empty()
    assert forms.definitional.apply(sec).is_empty()


def test_battery_composition():
    ctx = dy.context_for(2, Q(1, 2))
    bat = dy.make_battery(ctx, size=20, seed=7)
    assert len(bat) == 20
    # determinism
    bat2 = dy.make_battery(ctx, size=20, seed=7)
    assert [s.to_text() for s in bat.sections] == [s.to_text() for s in bat2.sections]
    bat3 = dy.make_battery(ctx, size=20, seed=8)
    assert [s.to_text() for s in bat.sections] != [s.to_text() for s in bat3.sections]


@pytest.mark.parametrize(
    "n,mu", [(1, Q(0)), (1, Q(-1, 2)), (2, Q(1, 2)), (2, Q(3, 2))]
)
def test_family_matches_formal_operators(n, mu):
    ctx = dy.context_for(n, mu)
    fam = dy.GeneratorFamily(ctx)
    bat = dy.make_battery(ctx, size=3, seed=5)
    for sec in bat.sections:
        fast = fam.apply_all(sec)
        for key in fam.keys:
            A, B = dy.key_pair(key, ctx.D)
            forms = dy.build_generator(A, B, n, mu)
            assert S.equal(fast[key], forms.expanded.apply(sec)), key
            assert S.equal(
                forms.definitional.apply(sec), forms.expanded.apply(sec)
            ), key


def test_t_on_constant_spinor():
    ctx = dy.context_for(2, Q(1))
    v = ctx.basis_section(0)
    fam = dy.GeneratorFamily(ctx)
    want = v.scaled(GaussianRational(0, Q(-(ctx.D - 1), 2)))
    assert S.equal(fam.apply_all(v)[("T",)], want)


def test_gamma_minus_expanded_form():
    # Gamma_{-1} = (rpi^2 + r + c/r)/2 reproduced by the family pass
    ctx = dy.context_for(1, Q(1, 2))
    fam = dy.GeneratorFamily(ctx)
    sec = ctx.term(1, x=(1, 0, 0), u=-1, q=-1)
    pi2 = ctx.zero()
    for b in range(1, 4):
        pi2 = pi2 + S.pi(S.pi(sec, b), b)
    want = (
        pi2.mul_monomial(r=1)
        + sec.mul_monomial(r=1)
        + sec.mul_monomial(r=-1).scaled(fam.c)
    ).scaled(Q(1, 2))
    assert S.equal(fam.apply_all(sec)[("Gm",)], want)


def test_antisymmetry_of_generators():
    n, mu = 1, Q(1, 2)
    sec = dy.context_for(n, mu).term(1, x=(0, 1, 0), r=Q(1, 2), u=-1)
    f1 = dy.build_generator(2, 0, n, mu).expanded.apply(sec)
    f2 = dy.build_generator(0, 2, n, mu).expanded.apply(sec)
    assert S.equal(f1, -f2)


def test_hat_fixes_rotations_and_r():
    ctx = dy.context_for(1, Q(1, 2))
    fam = dy.GeneratorFamily(ctx)
    bat = dy.make_battery(ctx, size=3, seed=2)
    for sec in bat.sections:
        plain = fam.apply_all(sec, only_j=True)
        hats = fam.apply_all_hat(sec, only_j=True)
        for k in plain:
            assert S.equal(plain[k], hats[k])
    op = dy.OperatorExpr.prim(("r", 1))
    sec = bat.sections[0]
    assert S.equal(dy.hat(op).apply(sec), op.apply(sec))


def test_specific_commutators():
    """[Gp, Gm] = -iT, [M_a, G_b] = -i eta_ab Gm, [A_a, A_b] = +i J_ab."""
    ctx = dy.context_for(1, Q(-1, 2))
    fam = dy.GeneratorFamily(ctx)
    sec = ctx.term(1, x=(1, 0, 1), r=Q(-1, 2), u=-1, q=-1)
    L1 = fam.apply_all(sec)
    L2 = {k: fam.apply_all(L1[k]) for k in fam.keys}

    def comm(k1, k2):
        return L2[k2][k1] - L2[k1][k2]

    assert S.equal(comm(("Gp",), ("Gm",)), L1[("T",)].scaled(-I_))
    # [M_1, G_1] = -i eta_11 Gm = +i Gm
    assert S.equal(comm(("M", 1), ("G", 1)), L1[("Gm",)].scaled(I_))
    assert comm(("M", 1), ("G", 2)).is_zero()
    # [A_1, A_2] = i J_12
    assert S.equal(comm(("A", 1), ("A", 2)), L1[("J", 1, 2)].scaled(I_))
    # [Z_a, Z_b] = 0 with Z = A + M
    za = L2[("A", 2)][("A", 1)] + L2[("M", 2)][("A", 1)] + L2[("A", 2)][("M", 1)] + L2[("M", 2)][("M", 1)]
    zb = L2[("A", 1)][("A", 2)] + L2[("M", 1)][("A", 2)] + L2[("A", 1)][("M", 2)] + L2[("M", 1)][("M", 2)]
    assert (za - zb).is_zero()


def test_dimension_operator_identities():
    ctx = dy.context_for(1, Q(1, 2))
    sec = ctx.term(1, x=(1, 0, 0), u=-1, q=-1)

    def dim_op(s):
        total = ctx.zero()
        for a in range(1, 4):
            total = total + dy.nabla(s, a).mul_x(a)
        return -total

    d = dim_op(sec)
    assert S.equal(dim_op(sec.mul_monomial(r=1)) - d.mul_monomial(r=1), -sec.mul_monomial(r=1))
    assert S.equal(dim_op(sec.mul_monomial(r=-1)) - d.mul_monomial(r=-1), sec.mul_monomial(r=-1))


@pytest.mark.parametrize("n,mu", [(1, Q(0)), (1, Q(3, 2))])
def test_suites_small_battery(n, mu):
    rep = dy.verify_lemma1(n, mu, size=4, seed=3)
    assert rep.status == "exact-pass", rep.detail
    rep = dy.verify_lemma2(n, mu, size=3, seed=3)
    assert rep.status == "exact-pass", rep.detail
    rc, rq = dy.verify_theorem(n, mu, size=3, seed=3)
    assert rc.status == "exact-pass", rc.detail
    assert rq.status == "exact-pass", rq.detail


def test_suite_n2_smoke():
    rep = dy.verify_lemma1(2, Q(-1, 2), size=2, seed=3)
    assert rep.status == "exact-pass", rep.detail
    rc, rq = dy.verify_theorem(2, Q(-1, 2), size=1, seed=3)
    assert rc.status == "exact-pass", rc.detail
    assert rq.status == "exact-pass", rq.detail


def test_hamiltonian_examples():
    ctx = dy.context_for(1, 0)
    psi = ctx.term(1, q=-1)
    assert dy.verify_hamiltonian(psi, 0, 1, 0).passed()
    ctx2 = dy.context_for(2, 0)
    assert dy.verify_hamiltonian(ctx2.term(1, q=Q(-1, 2)), 1, 2, 0).status == "fail"
    assert dy.verify_hamiltonian(ctx2.term(1, q=Q(-1, 2)), 0, 2, 0).passed()


def test_twist_ground_state():
    ctx = dy.context_for(1, 0)
    psi = ctx.term(1, q=-1)
    tw = dy.twist(psi, 0, 1, 0)
    assert S.equal(tw.section, ctx.term(1, r=Q(-1, 2), q=-1))
    assert tw.constant_sq == 1


def test_twist_norm_bookkeeping():
    from miczlab.ladder import hermitian_density, zonal_integral

    ctx = dy.context_for(1, Q(1, 2))
    from miczlab.ladder import highest_section

    hs = highest_section(1, 1, Q(1, 2))
    psi = dy.untwist(hs.section, 1, 1, Q(1, 2))
    tw = dy.twist(psi, 1, 1, Q(1, 2))
    lhs = zonal_integral(hermitian_density(tw.section, tw.section), 1)
    rhs = zonal_integral(hermitian_density(psi, psi), 1)
    assert lhs.cls == rhs.cls
    assert lhs.coeff * tw.constant_sq == rhs.coeff


def test_untwisted_tower_is_hamiltonian_eigen():
    from miczlab.ladder import highest_section, lower

    n, mu = 1, Q(1, 2)
    hs = highest_section(0, n, mu)
    sec = hs.section
    for j in range(3):
        psi = dy.untwist(sec, j, n, mu)
        rep = dy.verify_hamiltonian(psi, j, n, mu)
        assert rep.passed(), (j, rep.detail)
        sec = lower(sec)
