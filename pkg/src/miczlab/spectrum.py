"""Exact bound-state radial data: Laguerre polynomials, spectrum, norms.

All radial integrals reduce to int_0^inf r^P exp(-beta r) dr = P!/beta^(P+1)
with integer P once the measure r^(2n) dr is included; integrality is
asserted at runtime.  Normalization constants enter only through their
squares, which are rational; the constants themselves are never needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .exact import Q, Rational

__all__ = [
    "LaguerrePoly",
    "RadialSolution",
    "NonZeroResidual",
    "laguerre",
    "energy",
    "radial_ode_residual",
    "normalization",
    "twisted_radial_gram",
    "l_mu_of",
]


class NonZeroResidual(ArithmeticError):
    """A radial solution failed to satisfy its differential equation."""


def l_mu_of(l, n, mu):
    """Effective angular quantum number l + |mu| + n - 1."""
    return Q(l) + abs(Q(mu)) + n - 1


# ---------------------------------------------------------------------------
# generalized Laguerre polynomials, exact coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaguerrePoly:
    """L^alpha_m with exact ascending coefficients."""

    degree: int
    alpha: Rational
    coeffs: tuple

    def __call__(self, x):
        out = Q(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out


def laguerre(m, alpha):
    """Exact L^alpha_m via the three-term recurrence."""
    if m < 0:
        raise ValueError("degree must be non-negative")
    alpha = Q(alpha)
    prev = [Q(1)]
    if m == 0:
        return LaguerrePoly(0, alpha, tuple(prev))
    cur = [1 + alpha, Q(-1)]
    for k in range(1, m):
        # (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}
        nxt = [Q(0)] * (k + 2)
        for i, c in enumerate(cur):
            nxt[i] += (2 * k + 1 + alpha) * c
            nxt[i + 1] -= c
        for i, c in enumerate(prev):
            nxt[i] -= (k + alpha) * c
        inv = Q(1, k + 1)
        prev, cur = cur, [c * inv for c in nxt]
    return LaguerrePoly(m, alpha, tuple(cur))


# ---------------------------------------------------------------------------
# radial expressions: sums of c * r^(p/2) * exp(q r)
# ---------------------------------------------------------------------------

class RadialExpr:
    """Exact finite sum of half-integer r-powers times exponentials."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms or {}

    @classmethod
    def term(cls, coeff, p, q):
        c = Q(coeff)
        if not c:
            return cls({})
        p2 = 2 * Q(p)
        if int(p2) != p2:
            raise ValueError("r-power must be a half integer")
        return cls({(int(p2), Q(q)): c})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Q(0)) + c
        return RadialExpr({k: c for k, c in out.items() if c})

    def __sub__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Q(0)) - c
        return RadialExpr({k: c for k, c in out.items() if c})

    def scaled(self, f):
        f = Q(f)
        return RadialExpr({k: c * f for k, c in self.terms.items()}) if f else RadialExpr()

    def mul_r(self, p):
        dp = int(2 * Q(p))
        return RadialExpr({(p2 + dp, q): c for (p2, q), c in self.terms.items()})

    def derivative(self):
        out = {}
        for (p2, q), c in self.terms.items():
            if p2:
                k = (p2 - 2, q)
                out[k] = out.get(k, Q(0)) + c * Q(p2, 2)
            if q:
                k = (p2, q)
                out[k] = out.get(k, Q(0)) + c * q
        return RadialExpr({k: c for k, c in out.items() if c})

    def is_zero(self):
        return not self.terms

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({c})r^({Q(p2,2)})e^({q}r)" for (p2, q), c in sorted(self.terms.items())
        )


def product_integral(e1, e2, measure_power):
    """Exact int_0^inf e1*e2 * r^measure dr; exponents must come out integral."""
    total = Q(0)
    for (p2a, qa), ca in e1.terms.items():
        for (p2b, qb), cb in e2.terms.items():
            p2 = p2a + p2b + 2 * measure_power
            if p2 & 1:
                raise ValueError("non-integer exponent in a radial integral")
            p = p2 >> 1
            beta = -(qa + qb)
            if beta <= 0:
                raise ValueError("divergent radial integral (rate >= 0)")
            if p < 0:
                raise ValueError("divergent radial integral at the origin")
            total += ca * cb * factorial(p) / beta ** (p + 1)
    return total


# ---------------------------------------------------------------------------
# bound-state solutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RadialSolution:
    """Radial factor r^(l_mu+1-n) L^{2 l_mu + 1}_{k-1}(2r/(k+l_mu)) e^{-r/(k+l_mu)}.

    `csq` is the square of the positive constant normalizing it in
    L^2(R_+, r^(2n) dr).
    """

    k: int
    l: int
    n: int
    mu: Rational
    l_mu: Rational
    csq: Rational

    def base_expr(self):
        """The profile with constant 1 (multiply by sqrt(csq) to normalize)."""
        lm = self.l_mu
        lag = laguerre(self.k - 1, 2 * lm + 1)
        scale = Q(2) / (self.k + lm)
        out = RadialExpr()
        for j, c in enumerate(lag.coeffs):
            out = out + RadialExpr.term(c * scale**j, lm + 1 - self.n + j, -1 / (self.k + lm))
        return out

    def twisted_expr(self):
        """Twisted profile with constant 1: r^(l+|mu|-1/2) L^{2l_mu+1}_{k-1}(2r) e^{-r}."""
        lm = self.l_mu
        lag = laguerre(self.k - 1, 2 * lm + 1)
        out = RadialExpr()
        for j, c in enumerate(lag.coeffs):
            out = out + RadialExpr.term(c * Q(2) ** j, lm + Q(1, 2) - self.n + j, -1)
        return out

    def twisted_csq(self):
        """Square of the constant normalizing the twisted profile."""
        lam = Q(self.k) + self.l_mu
        return self.csq * lam ** int(2 * self.l_mu + 4)


def radial_solution(k, l, n, mu):
    if k < 1 or l < 0:
        raise ValueError("need k >= 1 and l >= 0")
    lm = l_mu_of(l, n, mu)
    if int(2 * lm + 1) != 2 * lm + 1:
        raise ValueError("2 l_mu + 1 must be an integer")
    sol = RadialSolution(k=k, l=l, n=n, mu=Q(mu), l_mu=lm, csq=Q(0))
    base = sol.base_expr()
    norm = product_integral(base, base, 2 * n)
    if norm <= 0:
        raise NonZeroResidual("normalization integral is not positive")
    return RadialSolution(k=k, l=l, n=n, mu=Q(mu), l_mu=lm, csq=1 / norm)


def energy(I, n, mu):
    """Bound energy E_I = -1 / (2 (I + n + |mu|)^2)."""
    if I < 0:
        raise ValueError("I must be non-negative")
    denom = I + n + abs(Q(mu))
    return -Q(1, 2) / (denom * denom)


def radial_ode_residual(k, l, n, mu):
    """Residual of the radial eigenvalue equation; empty iff solved exactly."""
    sol = radial_solution(k, l, n, mu)
    R = sol.base_expr()
    lm = sol.l_mu
    E = energy(k - 1 + l, n, mu)
    d1 = R.derivative()
    d2 = d1.derivative()
    residual = (
        d2.scaled(Q(-1, 2))
        + d1.mul_r(-1).scaled(-n)
        + R.mul_r(-2).scaled((lm * (lm + 1) - n * (n - 1)) / 2)
        - R.mul_r(-1)
        - R.scaled(E)
    )
    return residual


def normalization(k, l, n, mu):
    """c(k,l)^2 with c > 0 and int |R|^2 r^(2n) dr = 1."""
    return radial_solution(k, l, n, mu).csq


def twisted_radial_eigencheck(k, l, n, mu):
    """Radial reduction of the compact generator on the twisted profile.

    On a fixed angular channel the hatted generator (1/2)(r pi^2 + r + c/r)
    conjugated by sqrt(r) reduces to
        (1/2)(-r^{1/2-2n} d/dr r^{2n} d/dr r^{1/2} + l_mu(l_mu+1)/r + r)
    (the gauge coupling c cancels against the angular separation constant).
    Returns the residual against the eigenvalue k + l_mu; empty iff exact.
    """
    sol = radial_solution(k, l, n, mu)
    R = sol.twisted_expr()
    lm = sol.l_mu
    lifted = R.mul_r(Q(1, 2))
    d1 = lifted.derivative()
    d2 = d1.derivative()
    inner = d2.scaled(Q(-1, 2)) + d1.mul_r(-1).scaled(-n)
    gamma = (
        inner.mul_r(Q(-1, 2)).mul_r(1)
        + R.mul_r(-1).scaled((lm * (lm + 1) - n * (n - 1)) / 2)
        + R.mul_r(1).scaled(Q(1, 2))
    )
    return gamma - R.scaled(Q(k) + lm)


def twisted_radial_gram(k, kp, l, n, mu):
    """Exact int R~_k R~_k' r^(2n) dr; must be the identity matrix entry."""
    a = radial_solution(k, l, n, mu)
    b = radial_solution(kp, l, n, mu)
    raw = product_integral(a.twisted_expr(), b.twisted_expr(), 2 * n)
    if k != kp:
        # a nonzero value would multiply the irrational c_k c_k'; orthogonality
        # of the Laguerre family forces the rational factor itself to vanish
        if raw:
            raise NonZeroResidual(f"twisted profiles k={k}, k'={kp} not orthogonal")
        return Q(0)
    return a.twisted_csq() * raw
