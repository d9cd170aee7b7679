import pytest

import miczlab.reptheory as rt
from miczlab.exact import Q

W = rt.Weight
GRID_MU = [Q(0), Q(1, 2), Q(-1, 2), Q(1), Q(-1), Q(3, 2), Q(-3, 2)]


def test_weyl_dim_b1_oracle():
    for l in (Q(0), Q(1, 2), Q(1), Q(5, 2), Q(4)):
        assert rt.weyl_dim(W("B", (l,))) == int(2 * l + 1)


def test_weyl_dim_d2_oracle():
    for m1, m2 in [(1, 0), (2, 1), (Q(3, 2), Q(1, 2)), (Q(5, 2), Q(-1, 2)), (3, -2)]:
        assert rt.weyl_dim(W("D", (m1, m2))) == (Q(m1) + 1) ** 2 - Q(m2) ** 2


def test_weyl_dim_examples():
    assert rt.weyl_dim(W("D", (2, 0))) == 9  # (I+1)^2 at I=2
    assert rt.weyl_dim(W("D", (Q(5, 2), Q(1, 2)))) == 12  # (I+1)(I+2) at I=2


def test_weyl_dim_freudenthal_oracle():
    """Brute-force check via Freudenthal's multiplicity recursion, rank <= 2."""

    def freudenthal_dim(algebra, lam):
        rank = len(lam)
        roots = rt._positive_roots(algebra, rank)
        rho = rt._rho(algebra, rank)

        def ip(a, b):
            return sum(x * y for x, y in zip(a, b))

        lam = tuple(Q(c) for c in lam)
        mults = {lam: 1}
        # walk weights downward by positive roots
        frontier = [lam]
        seen = {lam}
        while frontier:
            new = []
            for w in frontier:
                for a in roots:
                    v = tuple(w[i] - a[i] for i in range(rank))
                    if v in seen:
                        continue
                    # candidate weight if it stays in the root lattice shifted
                    new.append(v)
                    seen.add(v)
            # keep only weights dominated by lam (finite cone)
            new = [
                v
                for v in new
                if ip(tuple(l - x for l, x in zip(lam, v)), rho) >= 0
                and max(abs(c) for c in v) <= max(abs(c) for c in lam)
            ]
            frontier = new
        order = sorted(seen, key=lambda v: -ip(v, rho))
        for v in order[1:]:
            denom = ip(tuple(l + r for l, r in zip(lam, rho)), tuple(l + r for l, r in zip(lam, rho))) - ip(
                tuple(x + r for x, r in zip(v, rho)), tuple(x + r for x, r in zip(v, rho))
            )
            if denom == 0:
                mults[v] = 0
                continue
            total = Q(0)
            for a in roots:
                k = 1
                while True:
                    u = tuple(v[i] + k * a[i] for i in range(rank))
                    if u not in mults or not mults[u]:
                        if u not in seen:
                            break
                        if not mults.get(u):
                            k += 1
                            if k > 50:
                                break
                            continue
                    total += 2 * mults.get(u, 0) * ip(u, a)
                    k += 1
                    if k > 50:
                        break
            m = total / denom
            assert m == int(m)
            mults[v] = int(m)
        return sum(mults.values())

    cases = [
        ("B", (1,)),
        ("B", (Q(3, 2),)),
        ("B", (1, 1)),
        ("B", (Q(3, 2), Q(1, 2))),
        ("D", (1, 0)),
        ("D", (Q(3, 2), Q(1, 2))),
        ("D", (1, -1)),
        ("D", (2, 1)),
    ]
    for algebra, lam in cases:
        assert rt.weyl_dim(W(algebra, lam)) == freudenthal_dim(algebra, lam), (
            algebra,
            lam,
        )


def test_non_dominant_rejected():
    with pytest.raises(rt.NonDominantError):
        W("B", (1, 2))
    with pytest.raises(rt.NonDominantError):
        W("D", (Q(1, 2), Q(3, 2)))
    with pytest.raises(rt.NonDominantError):
        W("B", (1, Q(1, 2)))


def test_branch_b1_to_d1():
    parts = rt.branch_B_to_D(W("B", (2,)))
    assert sorted(w.comps[0] for w in parts) == [-2, -1, 0, 1, 2]


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("mu", GRID_MU)
def test_branch_conservation_and_frobenius(n, mu):
    for l in (0, 1, 3):
        wB = W("B", tuple([l + abs(mu)] + [abs(mu)] * (n - 1)))
        parts = rt.branch_B_to_D(wB)
        assert sum(rt.weyl_dim(w) for w in parts) == rt.weyl_dim(wB)
        assert len(set(parts)) == len(parts)  # multiplicity one
        target = W("D", tuple([abs(mu)] * (n - 1) + [mu]))
        assert sum(1 for w in parts if w == target) == 1


def test_branch_d_to_b_example():
    parts = rt.branch_D_to_B(W("D", (1, 0)))
    assert sorted(w.comps[0] for w in parts) == [0, 1]
    assert sum(rt.weyl_dim(w) for w in parts) == 4


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("mu", GRID_MU)
def test_branch_d_to_b_interlacing_levels(n, mu):
    for I in (0, 1, 2):
        wD = W("D", tuple([I + abs(mu)] + [abs(mu)] * (n - 1) + [mu]))
        parts = rt.branch_D_to_B(wD)
        assert sum(rt.weyl_dim(w) for w in parts) == rt.weyl_dim(wD)
        assert len(set(parts)) == len(parts)
        special = sorted(
            w.comps[0] - abs(mu)
            for w in parts
            if all(c == abs(mu) for c in w.comps[1:])
        )
        assert special == [Q(l) for l in range(I + 1)]


def test_degeneracy_tables():
    assert [r[2] for r in rt.degeneracy_table(1, 0, 4)] == [1, 4, 9, 16, 25]
    assert [r[2] for r in rt.degeneracy_table(1, Q(1, 2), 4)] == [2, 6, 12, 20, 30]
    assert rt.degeneracy_table(2, 0, 0)[0][2] == 1


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("mu", GRID_MU)
def test_degeneracy_two_way(n, mu):
    rt.degeneracy_table(n, mu, 8)


def test_module_highest_weight():
    assert rt.module_highest_weight(1, 0) == (-1, 0, 0)
    assert rt.module_highest_weight(1, Q(1, 2)) == (Q(-3, 2), Q(1, 2), Q(1, 2))
    assert rt.module_highest_weight(2, Q(-1, 2)) == (
        Q(-5, 2),
        Q(1, 2),
        Q(1, 2),
        Q(-1, 2),
    )
