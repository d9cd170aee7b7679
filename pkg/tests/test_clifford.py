import pytest

import miczlab.clifford as cl
from miczlab.exact import GaussianRational, Q

GRID_MU = [Q(0), Q(1, 2), Q(-1, 2), Q(1), Q(-1), Q(3, 2), Q(-3, 2)]


@pytest.mark.parametrize("n", [1, 2])
def test_anticommutation_and_hermiticity(n):
    gs = cl.build_gamma(n)
    ident = cl.mat_id(gs.dim)
    for a in range(2 * n):
        for b in range(2 * n):
            anti = cl.mat_add(
                cl.mat_mul(gs.gammas[a], gs.gammas[b]),
                cl.mat_mul(gs.gammas[b], gs.gammas[a]),
            )
            want = cl.mat_scale(GaussianRational(2 if a == b else 0), ident)
            assert cl.mat_eq(anti, want)
    for g in gs.gammas:
        assert cl.mat_eq(g, cl.mat_conj_t(g))


def test_gamma12_eigenvalues_two_by_two():
    # direct 2x2 eigencomputation: char poly of gamma_12 is x^2 - 1/4
    gs = cl.build_gamma(1)
    g12 = cl.gamma_ab_matrices(gs)[(1, 2)]
    tr = cl.mat_trace(g12)
    det = g12[0][0] * g12[1][1] - g12[0][1] * g12[1][0]
    assert tr == GaussianRational(0)
    assert det == GaussianRational(Q(-1, 4))  # eigenvalues +1/2, -1/2


@pytest.mark.parametrize("n", [1, 2])
def test_chiral_split(n):
    gs = cl.build_gamma(n)
    pp, pm = cl.chiral_split(gs)
    ident = cl.mat_id(gs.dim)
    assert cl.mat_eq(cl.mat_add(pp, pm), ident)
    assert cl.mat_eq(cl.mat_mul(pp, pp), pp)
    assert cl.mat_eq(cl.mat_mul(pm, pm), pm)
    assert cl.mat_trace(pp) == GaussianRational(2 ** (n - 1))
    for m in cl.gamma_ab_matrices(gs).values():
        assert cl.mat_eq(cl.mat_mul(pp, m), cl.mat_mul(m, pp))


def test_chiral_split_n1_gamma12_action():
    gs = cl.build_gamma(1)
    pp, pm = cl.chiral_split(gs)
    g12 = cl.gamma_ab_matrices(gs)[(1, 2)]
    # gamma_12 acts as +1/2 on one projector image and -1/2 on the other
    vals = set()
    for p in (pp, pm):
        prod = cl.mat_mul(g12, p)
        half = cl.mat_scale(GaussianRational(Q(1, 2)), p)
        if cl.mat_eq(prod, half):
            vals.add(Q(1, 2))
        elif cl.mat_eq(prod, cl.mat_scale(GaussianRational(Q(-1, 2)), p)):
            vals.add(Q(-1, 2))
    assert vals == {Q(1, 2), Q(-1, 2)}


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("mu", GRID_MU)
def test_casimir_matches_closed_form(n, mu):
    rep = cl.build_rep(n, mu)
    assert cl.casimir_scalar(rep) == cl.casimir_formula(n, mu)


def test_casimir_examples():
    assert cl.casimir_scalar(cl.build_rep(1, Q(1, 2))) == Q(1, 4)
    assert cl.casimir_scalar(cl.build_rep(2, 1)) == 4
    assert cl.casimir_scalar(cl.build_rep(1, 0)) == 0
    assert cl.casimir_scalar(cl.build_rep(1, Q(-3, 2))) == Q(9, 4)
    assert cl.casimir_scalar(cl.build_rep(2, Q(1, 2))) == Q(3, 2)


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("mu", GRID_MU)
def test_rep_dimension_matches_weyl(n, mu):
    from miczlab.reptheory import Weight, weyl_dim

    rep = cl.build_rep(n, mu)
    w = Weight("D", tuple([abs(mu)] * (n - 1) + [mu]))
    assert rep.dim == weyl_dim(w)


def test_rep_examples():
    assert cl.build_rep(1, 0).dim == 1
    assert cl.build_rep(1, Q(1, 2)).dim == 1
    assert cl.build_rep(2, Q(1, 2)).dim == 2
    assert cl.build_rep(1, Q(-3, 2)).dim == 1
    assert cl.build_rep(2, Q(3, 2)).dim == 4


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("mu", [Q(1, 2), Q(-1), Q(3, 2)])
def test_commutator_closure(n, mu):
    """[gamma_ab, gamma_cd] closes with the so(2n) structure constants."""
    rep = cl.build_rep(n, mu)
    idx = range(1, 2 * n + 1)
    i_unit = GaussianRational.i()
    for a in idx:
        for b in idx:
            if a >= b:
                continue
            for c in idx:
                for d in idx:
                    if c >= d:
                        continue
                    comm = cl.commutator(rep.gamma(a, b), rep.gamma(c, d))
                    # [g_ab, g_cd] = i(d_bc g_ad - d_ac g_bd - d_bd g_ac + d_ad g_bc)
                    want = cl.mat_zero(rep.dim)
                    if b == c:
                        want = cl.mat_add(want, rep.gamma(a, d))
                    if a == c:
                        want = cl.mat_sub(want, rep.gamma(b, d))
                    if b == d:
                        want = cl.mat_sub(want, rep.gamma(a, c))
                    if a == d:
                        want = cl.mat_add(want, rep.gamma(b, c))
                    assert cl.mat_eq(comm, cl.mat_scale(i_unit, want)), (a, b, c, d)


def test_unsupported_grid():
    with pytest.raises(cl.UnsupportedError):
        cl.build_rep(1, 2)
    with pytest.raises(cl.UnsupportedError):
        cl.build_rep(3, Q(1, 2))
