"""Gamma matrices for so(2n), chiral spinors, and the twisting representations.

Construction is the standard tensor-doubling recursion; any exact hermitian
solution of the anticommutation relations works since downstream checks are
basis independent.  Conventions fixed here (and echoed in reports):

  * chirality element  chi = i^n gamma_1 ... gamma_{2n}  (hermitian, squares
    to the identity, diagonal in the tensor basis);
  * s_+ / s_- are the +1 / -1 chirality eigenspaces;
  * weights are read off the Cartan generators h_j = +gamma_{2j-1,2j}; the
    top vector of s_+ then has weight (1/2, ..., 1/2) and the top vector of
    s_- has weight (1/2, ..., 1/2, -1/2).

With this pairing the gamma_{2j-1,2j} matrices act on the highest weight
vector of the twisting module as +mu in the last slot, which is what makes
the axial Runge-Lenz expectation come out as +mu; the opposite phase gives
the mirror module (effective charge -mu).

The representation with highest weight (|mu|, ..., |mu|, mu) is realized as
the cyclic submodule generated by the top vector inside the 2|mu|-fold
symmetric power of s_{sign(mu)}, in the monomial basis of the symmetric
algebra (not orthonormal; irrelevant for the algebraic checks done here).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .exact import GaussianRational, Q, Rational

__all__ = [
    "GammaSystem",
    "RepAction",
    "NotScalarError",
    "UnsupportedError",
    "build_gamma",
    "chiral_split",
    "build_rep",
    "casimir_scalar",
    "CONVENTIONS",
]

CONVENTIONS = (
    "chirality=i^n*gamma_1..gamma_2n; s_pm = (+/-1)-eigenspaces; "
    "cartan h_j = +gamma_{2j-1,2j}; rep basis = monomial symmetric power"
)

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)
_I = GaussianRational(0, 1)

SUPPORTED_N = (1, 2)
MAX_ABS_MU = Q(3, 2)


class NotScalarError(ValueError):
    """The quadratic Casimir failed to act as a scalar matrix."""


class UnsupportedError(ValueError):
    """Requested representation is outside the supported (n, mu) grid."""


# ---------------------------------------------------------------------------
# small dense exact matrices (tuples of tuples of GaussianRational)
# ---------------------------------------------------------------------------

def mat_id(d):
    return tuple(
        tuple(_ONE if i == j else _ZERO for j in range(d)) for i in range(d)
    )


def mat_zero(d):
    return tuple(tuple(_ZERO for _ in range(d)) for _ in range(d))


def mat_mul(a, b):
    d = len(a)
    e = len(b[0])
    k_range = range(len(b))
    return tuple(
        tuple(
            sum((a[i][k] * b[k][j] for k in k_range), _ZERO) for j in range(e)
        )
        for i in range(d)
    )


def mat_add(a, b):
    return tuple(
        tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_sub(a, b):
    return tuple(
        tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_scale(c, a):
    return tuple(tuple(c * x for x in row) for row in a)


def mat_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_conj_t(a):
    d = len(a)
    e = len(a[0])
    return tuple(tuple(a[i][j].conjugate() for i in range(d)) for j in range(e))


def mat_trace(a):
    return sum((a[i][i] for i in range(len(a))), _ZERO)


def mat_kron(a, b):
    da, db = len(a), len(b)
    out = []
    for i in range(da):
        for k in range(db):
            out.append(
                tuple(a[i][j] * b[k][l] for j in range(da) for l in range(db))
            )
    return tuple(out)


def commutator(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


_SIGMA1 = ((_ZERO, _ONE), (_ONE, _ZERO))
_SIGMA2 = ((_ZERO, -_I), (_I, _ZERO))
_SIGMA3 = ((_ONE, _ZERO), (_ZERO, -_ONE))


# ---------------------------------------------------------------------------
# gamma systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GammaSystem:
    """2n hermitian anticommuting matrices of size 2^n over Q(i)."""

    n: int
    dim: int
    gammas: tuple


def build_gamma(n):
    """Gamma matrices for so(2n): gamma_a gamma_b + gamma_b gamma_a = 2 delta_ab."""
    if n < 1:
        raise ValueError("n must be >= 1")
    gammas = [_SIGMA1, _SIGMA2]
    for _ in range(n - 1):
        ident = mat_id(len(gammas[0]))
        gammas = [mat_kron(g, _SIGMA3) for g in gammas]
        gammas.append(mat_kron(ident, _SIGMA1))
        gammas.append(mat_kron(ident, _SIGMA2))
    return GammaSystem(n=n, dim=2**n, gammas=tuple(gammas))


def chirality(gs):
    """i^n * gamma_1 ... gamma_{2n}; hermitian and squares to the identity."""
    prod = mat_id(gs.dim)
    for g in gs.gammas:
        prod = mat_mul(prod, g)
    return mat_scale(_I ** gs.n, prod)


def chiral_split(gs):
    """Complementary projectors onto the chirality +1 / -1 eigenspaces."""
    chi = chirality(gs)
    ident = mat_id(gs.dim)
    half = GaussianRational(Q(1, 2))
    p_plus = mat_scale(half, mat_add(ident, chi))
    p_minus = mat_scale(half, mat_sub(ident, chi))
    return p_plus, p_minus


def gamma_ab_matrices(gs):
    """gamma_ab = (i/4)[gamma_a, gamma_b] for 1 <= a < b <= 2n."""
    quarter_i = GaussianRational(0, Q(1, 4))
    out = {}
    for a in range(1, 2 * gs.n + 1):
        for b in range(a + 1, 2 * gs.n + 1):
            out[(a, b)] = mat_scale(
                quarter_i, commutator(gs.gammas[a - 1], gs.gammas[b - 1])
            )
    return out


# ---------------------------------------------------------------------------
# exact row reduction over Q(i) (used for the cyclic-span computation)
# ---------------------------------------------------------------------------

def _rref(rows):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    rows = [list(r) for r in rows]
    pivots = []
    lead = 0
    ncols = len(rows[0]) if rows else 0
    for r in range(len(rows)):
        while lead < ncols:
            piv = None
            for i in range(r, len(rows)):
                if rows[i][lead]:
                    piv = i
                    break
            if piv is None:
                lead += 1
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = _ONE / rows[r][lead]
            rows[r] = [inv * x for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][lead]:
                    f = rows[i][lead]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(lead)
            lead += 1
            break
        else:
            break
    rank = len(pivots)
    return [tuple(r) for r in rows[:rank]], pivots


# ---------------------------------------------------------------------------
# twisting representations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RepAction:
    """Concrete so(2n) action: matrices for gamma_ab on the twisting space."""

    n: int
    mu: Rational
    dim: int
    gamma_ab: dict
    weights: tuple = field(default=(), compare=False)

    def gamma(self, a, b):
        """gamma_ab for any index order (antisymmetric; zero when a == b)."""
        if a == b:
            return mat_zero(self.dim)
        if a < b:
            return self.gamma_ab[(a, b)]
        return mat_scale(GaussianRational(-1), self.gamma_ab[(b, a)])


def _sym_basis(d, k):
    return list(combinations_with_replacement(range(d), k))


def _sym_action(mat, basis, index):
    """Matrix of the derivation action on the symmetric power, monomial basis."""
    d = len(mat)
    out = [[_ZERO] * len(basis) for _ in range(len(basis))]
    for col, t in enumerate(basis):
        seen = set()
        for pos, idx in enumerate(t):
            if idx in seen:
                continue
            seen.add(idx)
            mult = t.count(idx)
            rest = t[:pos] + t[pos + 1 :]
            for j in range(d):
                entry = mat[j][idx]
                if not entry:
                    continue
                new = tuple(sorted(rest + (j,)))
                out[index[new]][col] = out[index[new]][col] + mult * entry
    return tuple(tuple(row) for row in out)


def build_rep(n, mu):
    """Irreducible so(2n) action with highest weight (|mu|, ..., |mu|, mu)."""
    mu = Q(mu)
    if n not in SUPPORTED_N or abs(mu) > MAX_ABS_MU:
        raise UnsupportedError(f"(n={n}, mu={mu}) outside the supported grid")
    if (2 * mu) != int(2 * mu):
        raise ValueError("mu must be a half integer")

    if not mu:
        zero = mat_zero(1)
        gab = {
            (a, b): zero
            for a in range(1, 2 * n + 1)
            for b in range(a + 1, 2 * n + 1)
        }
        return RepAction(n=n, mu=mu, dim=1, gamma_ab=gab, weights=((Q(0),) * n,))

    gs = build_gamma(n)
    chi = chirality(gs)
    want = _ONE if mu > 0 else -_ONE
    # chi is diagonal in the tensor-product basis
    sel = [i for i in range(gs.dim) if chi[i][i] == want]
    gab_full = gamma_ab_matrices(gs)
    gab_chiral = {
        key: tuple(tuple(m[i][j] for j in sel) for i in sel)
        for key, m in gab_full.items()
    }

    k = int(2 * abs(mu))
    basis = _sym_basis(len(sel), k)
    index = {t: i for i, t in enumerate(basis)}
    gab_sym = {key: _sym_action(m, basis, index) for key, m in gab_chiral.items()}

    # weights of the chiral basis under h_j = +gamma_{2j-1, 2j}
    cartan = [gab_chiral[(2 * j - 1, 2 * j)] for j in range(1, n + 1)]
    basis_weights = [
        tuple(cartan[j][index_of][index_of].re for j in range(n))
        for index_of in range(len(sel))
    ]
    top = max(range(len(sel)), key=lambda i: basis_weights[i])
    hw = index[tuple([top] * k)]

    coords, dim = _cyclic_span(gab_sym.values(), hw, len(basis))
    gab_res = {key: _restrict(m, coords) for key, m in gab_sym.items()}
    hw_weight = tuple([abs(mu)] * (n - 1) + [mu])
    return RepAction(n=n, mu=mu, dim=dim, gamma_ab=gab_res, weights=(hw_weight,))


def _cyclic_span(mats, start, dim):
    """Span of the orbit of basis vector `start` under repeated matrix action."""
    vec = [_ZERO] * dim
    vec[start] = _ONE
    rows, _ = _rref([tuple(vec)])
    changed = True
    while changed:
        changed = False
        new_rows = list(rows)
        for m in mats:
            for v in rows:
                out = [_ZERO] * dim
                for j, c in enumerate(v):
                    if not c:
                        continue
                    for i in range(dim):
                        e = m[i][j]
                        if e:
                            out[i] = out[i] + c * e
                if any(out):
                    new_rows.append(tuple(out))
        reduced, _ = _rref(new_rows)
        if len(reduced) > len(rows):
            rows = reduced
            changed = True
    return rows, len(rows)


def _restrict(mat, coords):
    """Express `mat` in the row-space basis `coords` (must be invariant)."""
    dim = len(mat)
    k = len(coords)
    images = []
    for v in coords:
        out = [_ZERO] * dim
        for j, c in enumerate(v):
            if not c:
                continue
            for i in range(dim):
                e = mat[i][j]
                if e:
                    out[i] = out[i] + c * e
        images.append(out)
    # solve images[r] = sum_s X[s][r] coords[s] by elimination against coords
    pivrows, pivots = _rref(list(coords))
    restricted = [[_ZERO] * k for _ in range(k)]
    for r, img in enumerate(images):
        img = list(img)
        for s, p in enumerate(pivots):
            f = img[p]
            if f:
                restricted[s][r] = f
                img = [x - f * y for x, y in zip(img, pivrows[s])]
        if any(img):
            raise NotScalarError("cyclic span is not invariant (construction bug)")
    return tuple(tuple(row) for row in restricted)


def casimir_scalar(rep):
    """Verify (1/2) sum_ab gamma_ab gamma_ab = lambda * Id and return lambda."""
    total = mat_zero(rep.dim)
    for m in rep.gamma_ab.values():
        total = mat_add(total, mat_mul(m, m))
    lam = total[0][0]
    for i in range(rep.dim):
        for j in range(rep.dim):
            if i == j:
                if total[i][j] != lam:
                    raise NotScalarError("Casimir is not scalar")
            elif total[i][j]:
                raise NotScalarError("Casimir has off-diagonal entries")
    if lam.im:
        raise NotScalarError("Casimir scalar is not real")
    return lam.re


def casimir_formula(n, mu):
    """The closed-form Casimir value n*(mu^2 + (n-1)|mu|)."""
    mu = Q(mu)
    return n * (mu * mu + (n - 1) * abs(mu))
