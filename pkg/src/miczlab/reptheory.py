"""Weight bookkeeping for the orthogonal algebras B_n = so(2n+1), D_n = so(2n).

Dimensions come from the Weyl product formula; restriction multiplicities from
the classical interlacing conditions (all multiplicity one for B/D pairs),
which is exactly what the level-degeneracy accounting needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .exact import Q, Rational
from .spectrum import energy

__all__ = [
    "Weight",
    "NonDominantError",
    "MismatchError",
    "weyl_dim",
    "branch_B_to_D",
    "branch_D_to_B",
    "degeneracy_table",
    "module_highest_weight",
]


class NonDominantError(ValueError):
    """Weight is not dominant for the requested algebra."""


class MismatchError(AssertionError):
    """Two independent degeneracy computations disagreed."""


@dataclass(frozen=True)
class Weight:
    """Dominant highest weight of B_n ('B') or D_n ('D'), length = rank."""

    algebra: str
    comps: tuple

    def __post_init__(self):
        if self.algebra not in ("B", "D"):
            raise ValueError("algebra must be 'B' or 'D'")
        object.__setattr__(self, "comps", tuple(Q(c) for c in self.comps))
        for c in self.comps:
            if 2 * c != int(2 * c):
                raise ValueError("components must be half integers")
        cs = self.comps
        if len({int(2 * c) & 1 for c in cs}) > 1:
            raise NonDominantError("components must be congruent mod 1")
        if self.algebra == "B":
            if any(cs[i] < cs[i + 1] for i in range(len(cs) - 1)) or (
                cs and cs[-1] < 0
            ):
                raise NonDominantError(f"not B-dominant: {cs}")
        else:
            if any(cs[i] < cs[i + 1] for i in range(len(cs) - 2)) or (
                len(cs) >= 2 and cs[-2] < abs(cs[-1])
            ):
                raise NonDominantError(f"not D-dominant: {cs}")

    @property
    def rank(self):
        return len(self.comps)


def _rho(algebra, rank):
    if algebra == "B":
        return [Q(2 * (rank - i) - 1, 2) for i in range(rank)]
    return [Q(rank - 1 - i) for i in range(rank)]


def _positive_roots(algebra, rank):
    roots = []
    for i in range(rank):
        for j in range(i + 1, rank):
            e = [0] * rank
            e[i], e[j] = 1, -1
            roots.append(tuple(e))
            e = [0] * rank
            e[i], e[j] = 1, 1
            roots.append(tuple(e))
    if algebra == "B":
        for i in range(rank):
            e = [0] * rank
            e[i] = 1
            roots.append(tuple(e))
    return roots


def weyl_dim(w):
    """prod over positive roots of <lam+rho, a>/<rho, a>; exact integer."""
    rank = w.rank
    rho = _rho(w.algebra, rank)
    num = Q(1)
    den = Q(1)
    for root in _positive_roots(w.algebra, rank):
        num *= sum((w.comps[i] + rho[i]) * root[i] for i in range(rank))
        den *= sum(rho[i] * root[i] for i in range(rank))
    d = num / den
    if d != int(d) or d <= 0:
        raise NonDominantError(f"Weyl dimension of {w} is not a positive integer")
    return int(d)


def _interlace_range(hi, lo, parity_ref):
    """Half-integers x with lo <= x <= hi and x = parity_ref mod 1."""
    out = []
    x = hi
    while x >= lo:
        out.append(x)
        x = x - 1
    # hi and parity_ref are congruent mod 1 in every call site
    return out


def branch_B_to_D(w):
    """so(2n+1) -> so(2n) restriction: all interlacing D_n weights, mult one."""
    if w.algebra != "B":
        raise ValueError("expected a B_n weight")
    m = w.comps
    rank = w.rank
    choices = []
    for i in range(rank):
        hi = m[i]
        lo = m[i + 1] if i + 1 < rank else -m[rank - 1]
        choices.append(_interlace_range(hi, lo, hi))
    out = []
    for combo in iproduct(*choices):
        ok = True
        for i in range(rank - 1):
            if combo[i] < m[i + 1]:
                ok = False
                break
        if ok and abs(combo[-1]) <= m[-1] + 0:
            out.append(Weight("D", combo))
    return out


def branch_D_to_B(w):
    """so(2n+2) -> so(2n+1) restriction: interlacing B_n weights, mult one."""
    if w.algebra != "D":
        raise ValueError("expected a D_{n+1} weight")
    M = w.comps
    rank = w.rank - 1
    choices = []
    for i in range(rank):
        hi = M[i]
        lo = M[i + 1] if i + 1 < rank else abs(M[rank])
        choices.append(_interlace_range(hi, lo, hi))
    out = []
    for combo in iproduct(*choices):
        ok = all(combo[i] >= M[i + 1] for i in range(rank))
        if ok:
            out.append(Weight("B", combo))
    return out


def degeneracy_table(n, mu, imax):
    """Rows (I, E_I, dim H_I) with the dimension computed two independent ways."""
    mu = Q(mu)
    rows = []
    for I in range(imax + 1):
        w_big = Weight("D", tuple([I + abs(mu)] + [abs(mu)] * (n - 1) + [mu]))
        dim_direct = weyl_dim(w_big)
        dim_sum = 0
        for l in range(I + 1):
            w_small = Weight("B", tuple([l + abs(mu)] + [abs(mu)] * (n - 1)))
            dim_sum += weyl_dim(w_small)
        if dim_direct != dim_sum:
            raise MismatchError(
                f"degeneracy mismatch at (n={n}, mu={mu}, I={I}): "
                f"{dim_direct} != {dim_sum}"
            )
        rows.append((I, energy(I, n, mu), dim_direct))
    return rows


def module_highest_weight(n, mu):
    """Weight tuple (-(n+|mu|), |mu|, ..., |mu|, mu) of the bound-state module."""
    mu = Q(mu)
    return tuple([-(n + abs(mu))] + [abs(mu)] * n + [mu])[: n + 2]
