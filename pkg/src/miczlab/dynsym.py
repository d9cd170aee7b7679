"""Dynamical symmetry generators J_AB and their verification batteries.

The index A runs over (-1, 0, 1, ..., D, D+1) with the indefinite metric
eta = diag(+, +, -, ..., -) in that order.  Generators are labelled by keys

    ('J', a, b)  a < b spatial      J_ab = x_a pi_b - x_b pi_a + r^2 F_ab
    ('A', a)                        pair (a, D+1), Runge-Lenz type
    ('M', a)                        pair (a, -1)
    ('G', a)                        pair (a, 0),  Gamma_a = r pi_a
    ('T',)                          pair (D+1, -1)
    ('Gp',), ('Gm',)                pairs (D+1, 0), (-1, 0)

Every generator is built in two forms: the definitional one (nested
commutators of r pi_a, X = r pi^2 + c/r and Y = r) and the expanded one;
suites check the two agree on every battery section.  The heavy suites run
through GeneratorFamily, which shares the pi / pi^2 / F subcomputations
across the whole family; its output is cross-checked against the formal
expanded operators in the test suite.

Verification here is identity checking on finite batteries of sections, not
a formal proof; reports say so via their battery descriptors.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import product as iproduct

from . import sections as S
from .clifford import casimir_scalar
from .exact import GaussianRational, Q, Rational
from .reports import STATUS_EXACT, STATUS_FAIL, VerificationReport
from .sections import Context, SectionExpr, is_zero_certified
from .spectrum import energy

__all__ = [
    "GeneratorIndex",
    "eta",
    "generator_indices",
    "generator_keys",
    "jab",
    "OperatorExpr",
    "GeneratorForms",
    "build_generator",
    "hat",
    "GeneratorFamily",
    "Battery",
    "make_battery",
    "verify_lemma1",
    "verify_lemma2",
    "verify_commutators",
    "verify_quadratic",
    "verify_theorem",
    "verify_hamiltonian",
    "apply_hamiltonian",
    "twist",
    "untwist",
    "TwistResult",
    "coupling",
    "context_for",
]

GeneratorIndex = int

_I = GaussianRational(0, 1)

_CTX_CACHE = {}


def context_for(n, mu):
    key = (n, Q(mu))
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        ctx = Context(n, mu)
        _CTX_CACHE[key] = ctx
    return ctx


def coupling(ctx):
    """c = mu^2 + (n-1)|mu|, read off the representation's Casimir."""
    return casimir_scalar(ctx.rep) / ctx.n


def eta(A):
    """Indefinite metric: +1 on the two timelike indices -1, 0; else -1."""
    return 1 if A in (-1, 0) else -1


def generator_indices(n):
    D = 2 * n + 1
    return tuple([-1, 0] + list(range(1, D + 1)) + [D + 1])


def generator_keys(D):
    keys = [("J", a, b) for a in range(1, D + 1) for b in range(a + 1, D + 1)]
    keys += [("A", a) for a in range(1, D + 1)]
    keys += [("M", a) for a in range(1, D + 1)]
    keys += [("G", a) for a in range(1, D + 1)]
    keys += [("T",), ("Gp",), ("Gm",)]
    return tuple(keys)


def key_pair(key, D):
    """The (A, B) index pair a generator key stands for."""
    tag = key[0]
    if tag == "J":
        return (key[1], key[2])
    if tag == "A":
        return (key[1], D + 1)
    if tag == "M":
        return (key[1], -1)
    if tag == "G":
        return (key[1], 0)
    if tag == "T":
        return (D + 1, -1)
    if tag == "Gp":
        return (D + 1, 0)
    return (-1, 0)


def jab(D, A, B):
    """Resolve J_AB to (sign, generator key); None when A == B."""
    if A == B:
        return None
    if 1 <= A <= D:
        if 1 <= B <= D:
            return (1, ("J", A, B)) if A < B else (-1, ("J", B, A))
        if B == D + 1:
            return (1, ("A", A))
        if B == -1:
            return (1, ("M", A))
        if B == 0:
            return (1, ("G", A))
    if A == D + 1:
        if B == -1:
            return (1, ("T",))
        if B == 0:
            return (1, ("Gp",))
    if A == -1 and B == 0:
        return (1, ("Gm",))
    sign, key = jab(D, B, A)
    return (-sign, key)


# ---------------------------------------------------------------------------
# formal operator expressions
# ---------------------------------------------------------------------------

class OperatorExpr:
    """Formal Q(i)-sum of compositions of primitive operators.

    Primitives (applied left to right within a composition tuple):
    ('x', a), ('r', s), ('u', t), ('w', t), ('exp', q) multiplication;
    ('d', a) derivative; ('A', b) gauge; ('pi', a); ('F', a, b);
    ('mat', matrix).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        self.terms = tuple(terms)

    @classmethod
    def identity(cls):
        return cls(((GaussianRational(1), ()),))

    @classmethod
    def prim(cls, *prims):
        return cls(((GaussianRational(1), tuple(prims)),))

    @classmethod
    def zero(cls):
        return cls(())

    def scaled(self, c):
        c = c if isinstance(c, GaussianRational) else GaussianRational(c)
        if not c:
            return OperatorExpr(())
        return OperatorExpr(tuple((coeff * c, ops) for coeff, ops in self.terms))

    def __add__(self, other):
        return OperatorExpr(self.terms + other.terms)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __neg__(self):
        return self.scaled(-1)

    def __mul__(self, other):
        """Composition self o other (other acts first)."""
        out = []
        for c1, ops1 in self.terms:
            for c2, ops2 in other.terms:
                out.append((c1 * c2, ops2 + ops1))
        return OperatorExpr(tuple(out))

    def apply(self, sec):
        total = sec.ctx.zero()
        for coeff, ops in self.terms:
            cur = sec
            for p in ops:
                cur = _apply_prim(cur, p)
            total = total + cur.scaled(coeff)
        return total

    def __repr__(self):
        return f"OperatorExpr({len(self.terms)} compositions)"


def _apply_prim(sec, p):
    tag = p[0]
    if tag == "pi":
        return S.pi(sec, p[1])
    if tag == "x":
        return sec.mul_x(p[1])
    if tag == "r":
        return sec.mul_monomial(r=p[1])
    if tag == "F":
        return S.field_strength(sec, p[1], p[2])
    if tag == "d":
        return S.derive(sec, p[1])
    if tag == "A":
        return S.apply_gauge(sec, p[1])
    if tag == "u":
        return sec.mul_monomial(u=p[1])
    if tag == "w":
        return sec.mul_monomial(w=p[1])
    if tag == "exp":
        return sec.mul_exp(p[1])
    if tag == "mat":
        return sec.apply_matrix(p[1])
    raise ValueError(f"unknown primitive {p!r}")


def op_commutator(a, b):
    return a * b - b * a


def hat(op):
    """Conjugation by sqrt(r): (1/sqrt r) op sqrt(r)."""
    out = []
    for coeff, ops in op.terms:
        out.append((coeff, (("r", Q(1, 2)),) + ops + (("r", Q(-1, 2)),)))
    return OperatorExpr(tuple(out))


@dataclass(frozen=True)
class GeneratorForms:
    pair: tuple
    definitional: OperatorExpr
    expanded: OperatorExpr


def _gamma_op(a):
    return OperatorExpr.prim(("pi", a), ("r", 1))


def _x_op(ctx):
    D = ctx.D
    c = coupling(ctx)
    terms = [(GaussianRational(1), (("pi", b), ("pi", b), ("r", 1))) for b in range(1, D + 1)]
    terms.append((GaussianRational(c), (("r", -1),)))
    return OperatorExpr(tuple(terms))


def _y_op():
    return OperatorExpr.prim(("r", 1))


def _rpi_op(ctx):
    D = ctx.D
    return OperatorExpr(
        tuple((GaussianRational(1), (("pi", b), ("x", b))) for b in range(1, D + 1))
    )


def _pi2_op(ctx):
    D = ctx.D
    return OperatorExpr(
        tuple((GaussianRational(1), (("pi", b), ("pi", b))) for b in range(1, D + 1))
    )


def _z_expanded(ctx, a):
    D = ctx.D
    c = coupling(ctx)
    terms = []
    for b in range(1, D + 1):
        terms.append((GaussianRational(1), (("pi", b), ("pi", b), ("x", a))))
        terms.append((GaussianRational(-2), (("pi", b), ("x", b), ("pi", a))))
        if b != a:
            terms.append((GaussianRational(2), (("pi", b), ("F", a, b), ("r", 2))))
    terms.append((GaussianRational(-c), (("r", -2), ("x", a))))
    terms.append((GaussianRational(0, D - 3), (("pi", a),)))
    return OperatorExpr(tuple(terms))


def build_generator(A, B, n, mu):
    """Both forms of J_AB; the zero operator when A == B."""
    ctx = context_for(n, mu)
    D = ctx.D
    resolved = jab(D, A, B)
    if resolved is None:
        z = OperatorExpr.zero()
        return GeneratorForms((A, B), z, z)
    sign, key = resolved
    forms = _key_forms(ctx, key)
    if sign == 1:
        return GeneratorForms((A, B), forms[0], forms[1])
    return GeneratorForms((A, B), forms[0].scaled(-1), forms[1].scaled(-1))


def _key_forms(ctx, key):
    D = ctx.D
    c = coupling(ctx)
    tag = key[0]
    X = _x_op(ctx)
    Y = _y_op()
    if tag == "J":
        a, b = key[1], key[2]
        de = op_commutator(_gamma_op(a), _gamma_op(b)).scaled(_I)
        ex = (
            OperatorExpr.prim(("pi", b), ("x", a))
            - OperatorExpr.prim(("pi", a), ("x", b))
            + OperatorExpr.prim(("F", a, b), ("r", 2))
        )
        return de, ex
    if tag in ("A", "M"):
        a = key[1]
        z_def = op_commutator(_gamma_op(a), X).scaled(_I)
        w_def = op_commutator(_gamma_op(a), Y).scaled(_I)
        z_ex = _z_expanded(ctx, a)
        w_ex = OperatorExpr.prim(("x", a))
        s = -1 if tag == "A" else 1
        de = (z_def + w_def.scaled(s)).scaled(Q(1, 2))
        ex = (z_ex + w_ex.scaled(s)).scaled(Q(1, 2))
        return de, ex
    if tag == "G":
        g = _gamma_op(key[1])
        return g, g
    if tag == "T":
        de = op_commutator(X, Y).scaled(GaussianRational(0, Q(1, 2)))
        ex = _rpi_op(ctx) + OperatorExpr.identity().scaled(
            GaussianRational(0, Q(-(D - 1), 2))
        )
        return de, ex
    if tag in ("Gp", "Gm"):
        s = -1 if tag == "Gp" else 1
        de = (X + Y.scaled(s)).scaled(Q(1, 2))
        terms = [
            (GaussianRational(Q(1, 2)), (("pi", b), ("pi", b), ("r", 1)))
            for b in range(1, D + 1)
        ]
        terms.append((GaussianRational(Q(s, 2)), (("r", 1),)))
        terms.append((GaussianRational(c / 2), (("r", -1),)))
        ex = OperatorExpr(tuple(terms))
        return de, ex
    raise ValueError(f"unknown generator key {key!r}")


# ---------------------------------------------------------------------------
# fast family application (shared subcomputations)
# ---------------------------------------------------------------------------

class GeneratorFamily:
    """Applies every generator to a section in one shared pass."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.c = coupling(ctx)
        self.keys = generator_keys(ctx.D)

    def apply_all(self, sec, only_j=False):
        ctx = self.ctx
        D = ctx.D
        c = self.c
        out = {}
        pis = {b: S.pi(sec, b) for b in range(1, D + 1)}
        for a in range(1, D + 1):
            for b in range(a + 1, D + 1):
                out[("J", a, b)] = (
                    pis[b].mul_x(a)
                    - pis[a].mul_x(b)
                    + S.field_strength(sec, a, b).mul_monomial(r=2)
                )
        if only_j:
            return out
        rpi = ctx.zero()
        pi2 = ctx.zero()
        for b in range(1, D + 1):
            rpi = rpi + pis[b].mul_x(b)
            pi2 = pi2 + S.pi(pis[b], b)
        out[("T",)] = rpi + sec.scaled(GaussianRational(0, Q(-(D - 1), 2)))
        x_sec = pi2.mul_monomial(r=1) + sec.mul_monomial(r=-1).scaled(c)
        y_sec = sec.mul_monomial(r=1)
        out[("Gm",)] = (x_sec + y_sec).scaled(Q(1, 2))
        out[("Gp",)] = (x_sec - y_sec).scaled(Q(1, 2))
        for a in range(1, D + 1):
            out[("G", a)] = pis[a].mul_monomial(r=1)
            fpi = ctx.zero()
            for b in range(1, D + 1):
                if b != a:
                    fpi = fpi + S.field_strength(pis[b], a, b)
            z = (
                pi2.mul_x(a)
                + S.pi(rpi, a).scaled(-2)
                + fpi.mul_monomial(r=2).scaled(2)
                + sec.mul_monomial(x=_unit(D, a - 1), r=-2).scaled(-c)
                + pis[a].scaled(GaussianRational(0, D - 3))
            )
            w = sec.mul_x(a)
            out[("A", a)] = (z - w).scaled(Q(1, 2))
            out[("M", a)] = (z + w).scaled(Q(1, 2))
        return out

    def apply_all_hat(self, sec, only_j=False):
        inner = self.apply_all(sec.mul_monomial(r=Q(1, 2)), only_j)
        return {k: v.mul_monomial(r=Q(-1, 2)) for k, v in inner.items()}


def _unit(D, a0):
    return tuple(1 if i == a0 else 0 for i in range(D))


# ---------------------------------------------------------------------------
# batteries
# ---------------------------------------------------------------------------

@dataclass
class Battery:
    sections: list
    descriptor: str
    seed: int

    def __len__(self):
        return len(self.sections)


def make_battery(ctx, size=20, seed=7):
    """Deterministic battery of single-monomial sections.

    Shape: x^m r^s u^{-t} e^{qr} (x) v with |m| <= 2, s in half steps of
    [-1, 1], t in {0, 1, 2}, q in {0, -1}, v over the spin basis.  Stratified
    so every s, t, q and spin value appears when size permits.
    """
    D = ctx.D
    monos = [m for m in iproduct(*([range(3)] * D)) if sum(m) <= 2]
    svals = [Q(-1), Q(-1, 2), Q(0), Q(1, 2), Q(1)]
    tvals = [0, 1, 2]
    qvals = [Q(0), Q(-1)]
    combos = [
        (m, s, t, q, v)
        for m in monos
        for s in svals
        for t in tvals
        for q in qvals
        for v in range(ctx.dim)
    ]
    rng = random.Random(f"{seed}:{ctx.n}:{ctx.mu}:{size}")
    rng.shuffle(combos)
    picked = []
    need = {
        "s": set(map(str, svals)),
        "t": set(tvals),
        "q": set(map(str, qvals)),
        "v": set(range(ctx.dim)),
    }
    rest = []
    for combo in combos:
        m, s, t, q, v = combo
        fresh = (
            str(s) in need["s"]
            or t in need["t"]
            or str(q) in need["q"]
            or v in need["v"]
        )
        if fresh and len(picked) < size:
            picked.append(combo)
            need["s"].discard(str(s))
            need["t"].discard(t)
            need["q"].discard(str(q))
            need["v"].discard(v)
        else:
            rest.append(combo)
    for combo in rest:
        if len(picked) >= size:
            break
        picked.append(combo)
    secs = [
        ctx.term(1, x=m, r=s, u=-t, q=q, spin=v) for (m, s, t, q, v) in picked
    ]
    desc = (
        f"monomials:|m|<=2;s in [-1,1] half steps;u^-t t<=2;q in {{0,-1}};"
        f"spin dim {ctx.dim};size={len(secs)};seed={seed}"
    )
    return Battery(sections=secs, descriptor=desc, seed=seed)


# ---------------------------------------------------------------------------
# suite plumbing
# ---------------------------------------------------------------------------

class _Outcome:
    """Aggregates per-identity residual results into one report status."""

    def __init__(self):
        self.checked = 0
        self.chart_certified = 0
        self.failed = None
        self.residual_terms = 0

    def add(self, name, residual):
        self.checked += 1
        zero, cert = is_zero_certified(residual)
        if zero:
            if cert == "chart":
                self.chart_certified += 1
            return True
        if self.failed is None:
            self.failed = name
            self.residual_terms = residual.term_count()
        return False

    def report(self, check, ctx, battery, params, t0):
        elapsed = (time.perf_counter() - t0) * 1000.0
        if self.failed is None:
            status = STATUS_EXACT
            detail = f"identities={self.checked}"
            if self.chart_certified:
                detail += f";chart_certified={self.chart_certified}"
            residual_terms = 0
        else:
            status = STATUS_FAIL
            detail = f"first_failure={self.failed};identities={self.checked}"
            residual_terms = self.residual_terms
        return VerificationReport(
            check=check,
            n=ctx.n,
            mu=ctx.mu,
            params=params,
            battery=battery.descriptor,
            seed=battery.seed,
            status=status,
            residual_terms=residual_terms,
            elapsed_ms=elapsed,
            detail=detail,
        )


def _setup(n, mu, battery, size, seed):
    ctx = context_for(n, mu)
    if battery is None:
        battery = make_battery(ctx, size=size, seed=seed)
    return ctx, battery


# ---------------------------------------------------------------------------
# Lemma-style gauge field suites
# ---------------------------------------------------------------------------

def nabla(sec, axis):
    """Covariant derivative d_axis + i A_axis = i pi_axis."""
    return S.pi(sec, axis).scaled(_I)


def verify_lemma1(n, mu, battery=None, size=20, seed=7):
    """Gauge-potential and field-strength identity families, exact."""
    t0 = time.perf_counter()
    ctx, battery = _setup(n, mu, battery, size, seed)
    D = ctx.D
    c = coupling(ctx)
    c2 = casimir_scalar(ctx.rep)
    out = _Outcome()
    pairs = [(a, b) for a in range(1, D + 1) for b in range(a + 1, D + 1)]
    for idx, sec in enumerate(battery.sections):
        fsec = {(a, b): S.field_strength(sec, a, b) for a, b in pairs}

        def F(a, b):
            if a == b:
                return ctx.zero()
            return fsec[(a, b)] if a < b else -fsec[(b, a)]

        # trace identity: F_{mn} F^{mn} = 2 c_2 / r^4
        tot = ctx.zero()
        for a, b in pairs:
            tot = tot + S.field_strength(fsec[(a, b)], a, b).scaled(2)
        out.add(f"FF-trace@{idx}", tot - sec.mul_monomial(r=-4).scaled(2 * c2))

        # x . A = 0 and A_D = 0
        tot = ctx.zero()
        for b in range(1, D + 1):
            tot = tot + S.apply_gauge(sec, b).mul_x(b)
        out.add(f"xA@{idx}", tot)
        out.add(f"AD@{idx}", S.apply_gauge(sec, D))

        # x_m F_{mn} = 0
        for nu in range(1, D + 1):
            tot = ctx.zero()
            for m in range(1, D + 1):
                if m != nu:
                    tot = tot + F(m, nu).mul_x(m)
            out.add(f"xF@{idx}:{nu}", tot)

        # transport: [nabla_k, F_{mn}] = (x_m F_{nk} + x_n F_{km} - 2 x_k F_{mn})/r^2
        nab = {k: nabla(sec, k) for k in range(1, D + 1)}
        for k in range(1, D + 1):
            for m, nu in pairs:
                lhs = nabla(fsec[(m, nu)], k) - S.field_strength(nab[k], m, nu)
                rhs = (
                    F(nu, k).mul_x(m)
                    + F(k, m).mul_x(nu)
                    - F(m, nu).mul_x(k).scaled(2)
                ).mul_monomial(r=-2)
                out.add(f"transport@{idx}:{k},{m},{nu}", lhs - rhs)

        # divergence: [nabla_m, F_{mn}] = 0
        for nu in range(1, D + 1):
            tot = ctx.zero()
            for m in range(1, D + 1):
                if m == nu:
                    continue
                tot = tot + nabla(F(m, nu), m) - S.field_strength(nab[m], m, nu)
            out.add(f"divF@{idx}:{nu}", tot)

        # double-F commutator identity
        f2 = {}
        for p1 in pairs:
            for p2 in pairs:
                f2[(p1, p2)] = S.field_strength(fsec[p2], p1[0], p1[1])
        for (m, nu) in pairs:
            for (al, be) in pairs:
                comm = f2[((m, nu), (al, be))] - f2[((al, be), (m, nu))]
                lhs = comm.mul_monomial(r=2)
                if al == nu:
                    lhs = lhs + F(m, be).scaled(_I)
                if al == m:
                    lhs = lhs - F(nu, be).scaled(_I)
                if be == nu:
                    lhs = lhs + F(al, m).scaled(_I)
                if be == m:
                    lhs = lhs - F(al, nu).scaled(_I)
                rhs = (
                    F(be, nu).mul_x(m).mul_x(al)
                    + F(nu, al).mul_x(m).mul_x(be)
                    - F(be, m).mul_x(nu).mul_x(al)
                    - F(m, al).mul_x(nu).mul_x(be)
                ).mul_monomial(r=-2).scaled(_I)
                out.add(f"FFcomm@{idx}:{m}{nu},{al}{be}", lhs - rhs)

        # contraction identity: r^2 F_{la} F_{lb} = c (d_ab/r^2 - x_a x_b/r^4)
        #                        + i(n-1) F_{ab}, in the irreducible action
        for al in range(1, D + 1):
            for be in range(1, D + 1):
                tot = ctx.zero()
                for lam in range(1, D + 1):
                    if lam == al or lam == be:
                        continue
                    tot = tot + S.field_strength(F(lam, be), lam, al)
                lhs = tot.mul_monomial(r=2)
                rhs = F(al, be).scaled(GaussianRational(0, ctx.n - 1))
                if al == be:
                    rhs = rhs + sec.mul_monomial(r=-2).scaled(c)
                rhs = rhs - sec.mul_monomial(
                    x=_two_unit(D, al - 1, be - 1), r=-4
                ).scaled(c)
                out.add(f"contraction@{idx}:{al},{be}", lhs - rhs)

    params = {"families": 7}
    return out.report("lemma1", ctx, battery, params, t0)


def _two_unit(D, a0, b0):
    m = [0] * D
    m[a0] += 1
    m[b0] += 1
    return tuple(m)


def verify_lemma2(n, mu, battery=None, size=20, seed=7):
    """so(D) tensor transformation laws of r, x, pi, F under J_ab."""
    t0 = time.perf_counter()
    ctx, battery = _setup(n, mu, battery, size, seed)
    D = ctx.D
    fam = GeneratorFamily(ctx)
    out = _Outcome()
    pairs = [(a, b) for a in range(1, D + 1) for b in range(a + 1, D + 1)]
    for idx, sec in enumerate(battery.sections):
        base = fam.apply_all(sec, only_j=True)
        pis = {nu: S.pi(sec, nu) for nu in range(1, D + 1)}
        fs = {p: S.field_strength(sec, *p) for p in pairs}
        j_of = {
            "r": fam.apply_all(sec.mul_monomial(r=1), only_j=True),
            "rinv": fam.apply_all(sec.mul_monomial(r=-1), only_j=True),
        }
        j_of_x = {nu: fam.apply_all(sec.mul_x(nu), only_j=True) for nu in range(1, D + 1)}
        j_of_pi = {nu: fam.apply_all(pis[nu], only_j=True) for nu in range(1, D + 1)}
        j_of_fs = {p: fam.apply_all(fs[p], only_j=True) for p in pairs}
        for (a, b) in pairs:
            jsec = base[("J", a, b)]
            # scalars
            out.add(
                f"Jr@{idx}:{a}{b}", j_of["r"][("J", a, b)] - jsec.mul_monomial(r=1)
            )
            out.add(
                f"Jrinv@{idx}:{a}{b}",
                j_of["rinv"][("J", a, b)] - jsec.mul_monomial(r=-1),
            )
            # vectors
            for nu in range(1, D + 1):
                comm = j_of_x[nu][("J", a, b)] - jsec.mul_x(nu)
                want = ctx.zero()
                if nu == b:
                    want = want + sec.mul_x(a)
                if nu == a:
                    want = want - sec.mul_x(b)
                out.add(f"Jx@{idx}:{a}{b},{nu}", comm - want.scaled(-_I))
                comm = j_of_pi[nu][("J", a, b)] - S.pi(jsec, nu)
                want = ctx.zero()
                if nu == b:
                    want = want + pis[a]
                if nu == a:
                    want = want - pis[b]
                out.add(f"Jpi@{idx}:{a}{b},{nu}", comm - want.scaled(-_I))
            # bivectors
            for (ap, bp) in pairs:
                comm = j_of_fs[(ap, bp)][("J", a, b)] - S.field_strength(jsec, ap, bp)
                want = ctx.zero()
                if a == ap:
                    want = want + _fs_signed(ctx, fs, sec, b, bp)
                if b == bp:
                    want = want + _fs_signed(ctx, fs, sec, a, ap)
                if a == bp:
                    want = want - _fs_signed(ctx, fs, sec, b, ap)
                if b == ap:
                    want = want - _fs_signed(ctx, fs, sec, a, bp)
                out.add(f"JF@{idx}:{a}{b},{ap}{bp}", comm - want.scaled(_I))
        # dimension operator -r.nabla
        def dim_op(s):
            tot = ctx.zero()
            for al in range(1, D + 1):
                tot = tot + nabla(s, al).mul_x(al)
            return -tot

        dsec = dim_op(sec)
        out.add(
            f"dim-r@{idx}",
            dim_op(sec.mul_monomial(r=1)) - dsec.mul_monomial(r=1)
            + sec.mul_monomial(r=1),
        )
        out.add(
            f"dim-rinv@{idx}",
            dim_op(sec.mul_monomial(r=-1)) - dsec.mul_monomial(r=-1)
            - sec.mul_monomial(r=-1),
        )
        for nu in (1, D):
            out.add(
                f"dim-x@{idx}:{nu}",
                dim_op(sec.mul_x(nu)) - dsec.mul_x(nu) + sec.mul_x(nu),
            )
            out.add(
                f"dim-pi@{idx}:{nu}",
                dim_op(pis[nu]) - S.pi(dsec, nu) - pis[nu],
            )
    return out.report("lemma2", ctx, battery, {"laws": 6}, t0)


def _fs_signed(ctx, cache, sec, a, b):
    if a == b:
        return ctx.zero()
    if a < b:
        return cache[(a, b)]
    return -cache[(b, a)]


# ---------------------------------------------------------------------------
# Theorem suites: commutation relations and quadratic identities
# ---------------------------------------------------------------------------

def _cmtr_rhs(layer1, D, key1, key2, sec_zero):
    A, B = key_pair(key1, D)
    Ap, Bp = key_pair(key2, D)
    total = sec_zero

    # four metric terms; eta is diagonal so each fires only on index collision
    def add(total, sgn, first, second, XY):
        if first != second:
            return total
        resolved = jab(D, *XY)
        if resolved is None:
            return total
        s, key = resolved
        scalar = GaussianRational(0, sgn * eta(first) * s)
        return total + layer1[key].scaled(scalar)

    total = add(total, -1, A, Ap, (B, Bp))
    total = add(total, -1, B, Bp, (A, Ap))
    total = add(total, 1, A, Bp, (B, Ap))
    total = add(total, 1, B, Ap, (A, Bp))
    return total


def verify_commutators(n, mu, battery=None, size=20, seed=7, variants=("plain", "hat")):
    """Full so(2, 2n+2) commutation table on the battery (hatted too)."""
    rep, _ = _pair_scan(n, mu, battery, size, seed, variants, want_quad=False)
    return rep


def verify_quadratic(n, mu, battery=None, size=20, seed=7):
    """The ten quadratic generator identities with a = n - c."""
    _, rep = _pair_scan(n, mu, battery, size, seed, ("plain",), want_cmtr=False)
    return rep


def verify_theorem(n, mu, battery=None, size=20, seed=7):
    """Commutator and quadratic suites sharing one pair table."""
    return _pair_scan(n, mu, battery, size, seed, ("plain", "hat"))


def _pair_scan(
    n,
    mu,
    battery=None,
    size=20,
    seed=7,
    variants=("plain", "hat"),
    want_cmtr=True,
    want_quad=True,
):
    t0 = time.perf_counter()
    ctx, battery = _setup(n, mu, battery, size, seed)
    D = ctx.D
    fam = GeneratorFamily(ctx)
    keys = fam.keys
    a_const = ctx.n - fam.c
    out_c = _Outcome()
    out_q = _Outcome()
    zero = ctx.zero()
    for idx, sec in enumerate(battery.sections):
        for variant in variants:
            hatted = variant == "hat"
            apply_all = fam.apply_all_hat if hatted else fam.apply_all
            layer1 = apply_all(sec)
            layer2 = {k: apply_all(layer1[k]) for k in keys}
            if want_cmtr:
                for i1, g1 in enumerate(keys):
                    for g2 in keys[i1 + 1 :]:
                        comm = layer2[g2][g1] - layer2[g1][g2]
                        rhs = _cmtr_rhs(layer1, D, g1, g2, zero)
                        out_c.add(f"cmtr@{idx}/{variant}:{g1}|{g2}", comm - rhs)
            if want_quad and not hatted:
                _quad_identities(
                    ctx, layer2, keys, D, a_const, sec, out_q, f"{idx}"
                )
    params_c = {"generators": len(keys), "variants": list(variants)}
    rep_c = out_c.report("commutators", ctx, battery, params_c, t0) if want_cmtr else None
    rep_q = (
        out_q.report("quadratic", ctx, battery, {"identities": 10}, t0)
        if want_quad
        else None
    )
    return rep_c, rep_q


def _quad_identities(ctx, layer2, keys, D, a_const, sec, out, tag):
    def ac(sk1, sk2):
        s1, k1 = sk1
        s2, k2 = sk2
        e = layer2[k2][k1] + layer2[k1][k2]
        s = s1 * s2
        return e if s == 1 else e.scaled(s)

    def sq(key):
        return layer2[key][key]

    def Jkey(al, be):
        if al == be:
            return None
        return (1, ("J", al, be)) if al < be else (-1, ("J", be, al))

    A_ = lambda a: (1, ("A", a))
    M_ = lambda a: (1, ("M", a))
    G_ = lambda a: (1, ("G", a))
    T_ = (1, ("T",))
    Gp_ = (1, ("Gp",))
    Gm_ = (1, ("Gm",))

    spatial = range(1, D + 1)
    # 1: sum_a {J_ab, J_ag} + {A_b, A_g} - {M_b, M_g} - {G_b, G_g} = 2 a eta_bg
    for be in spatial:
        for ga in spatial:
            if ga < be:
                continue
            tot = ctx.zero()
            for al in spatial:
                j1, j2 = Jkey(al, be), Jkey(al, ga)
                if j1 is None or j2 is None:
                    continue
                tot = tot + ac(j1, j2)
            tot = tot + ac(A_(be), A_(ga)) - ac(M_(be), M_(ga)) - ac(G_(be), G_(ga))
            if be == ga:
                tot = tot + sec.scaled(2 * a_const)
            out.add(f"quad1@{tag}:{be},{ga}", tot)
    # 2 and 4 and 7: vector identities
    for be in spatial:
        tot2 = ctx.zero()
        tot4 = ctx.zero()
        tot7 = ctx.zero()
        for al in spatial:
            j = Jkey(al, be)
            if j is None:
                continue
            tot2 = tot2 + ac(j, A_(al))
            tot4 = tot4 + ac(j, M_(al))
            tot7 = tot7 + ac(j, G_(al))
        out.add(f"quad2@{tag}:{be}", tot2 - ac(M_(be), T_) - ac(G_(be), Gp_))
        out.add(f"quad4@{tag}:{be}", tot4 - ac(A_(be), T_) - ac(G_(be), Gm_))
        out.add(f"quad7@{tag}:{be}", tot7 - ac(A_(be), Gp_) + ac(M_(be), Gm_))
    # 3: sum A^2 - T^2 - Gp^2 = -a
    tot = ctx.zero()
    for al in spatial:
        tot = tot + sq(("A", al))
    tot = tot - sq(("T",)) - sq(("Gp",)) + sec.scaled(a_const)
    out.add(f"quad3@{tag}", tot)
    # 5: sum {A, M} - {Gp, Gm} = 0
    tot = ctx.zero()
    for al in spatial:
        tot = tot + ac(A_(al), M_(al))
    out.add(f"quad5@{tag}", tot - ac(Gp_, Gm_))
    # 6: sum M^2 + T^2 - Gm^2 = a
    tot = ctx.zero()
    for al in spatial:
        tot = tot + sq(("M", al))
    tot = tot + sq(("T",)) - sq(("Gm",)) - sec.scaled(a_const)
    out.add(f"quad6@{tag}", tot)
    # 8: sum {A, G} + {T, Gm} = 0
    tot = ctx.zero()
    for al in spatial:
        tot = tot + ac(A_(al), G_(al))
    out.add(f"quad8@{tag}", tot + ac(T_, Gm_))
    # 9: sum {M, G} + {Gp, T} = 0
    tot = ctx.zero()
    for al in spatial:
        tot = tot + ac(M_(al), G_(al))
    out.add(f"quad9@{tag}", tot + ac(Gp_, T_))
    # 10: sum G^2 + Gp^2 - Gm^2 = a
    tot = ctx.zero()
    for al in spatial:
        tot = tot + sq(("G", al))
    tot = tot + sq(("Gp",)) - sq(("Gm",)) - sec.scaled(a_const)
    out.add(f"quad10@{tag}", tot)


# ---------------------------------------------------------------------------
# hamiltonian and the twisting map
# ---------------------------------------------------------------------------

def apply_hamiltonian(ctx, sec):
    """H = (1/2) pi^2 + c/(2 r^2) - 1/r applied exactly."""
    c = coupling(ctx)
    pi2 = ctx.zero()
    for b in range(1, ctx.D + 1):
        pi2 = pi2 + S.pi(S.pi(sec, b), b)
    return (
        pi2.scaled(Q(1, 2))
        + sec.mul_monomial(r=-2).scaled(c / 2)
        - sec.mul_monomial(r=-1)
    )


def verify_hamiltonian(section, I, n, mu, label=""):
    """Check H psi = E_I psi exactly for a constructed bound section."""
    t0 = time.perf_counter()
    ctx = section.ctx
    residual = apply_hamiltonian(ctx, section) - section.scaled(energy(I, n, mu))
    out = _Outcome()
    out.add(f"hamiltonian:{label}", residual)
    battery = Battery([section], f"constructed bound section I={I} {label}", 0)
    return out.report(
        "hamiltonian", ctx, battery, {"I": I, "label": label}, t0
    )


@dataclass
class TwistResult:
    """Twisted section, stored up to a positive constant.

    `section` times the positive square root of `constant_sq` is the exact
    twist image; the constant is irrational in general (powers of
    sqrt(I_mu + 1)), so it is tracked via its rational square.
    """

    section: SectionExpr
    constant_sq: Rational
    lam: Rational


def twist(section, I, n, mu):
    """Energy-level I twisting: lam^{n+1} r^{-1/2} psi(lam x), lam = I_mu+1."""
    mu = Q(mu)
    lam = Q(I) + n + abs(mu)  # I_mu + 1
    degs = set()
    for (m, s2, u2, w2, _q, _spin) in section.terms:
        degs.add(2 * sum(m) + s2 + u2 + w2)
    if not degs:
        return TwistResult(section, Q(1), lam)
    if len({d & 1 for d in degs}) > 1:
        raise ValueError("mixed homogeneity parity; twist constant undefined")
    d0 = min(degs)
    out = {}
    for (m, s2, u2, w2, q, spin), (re, im) in section.terms.items():
        deg2 = 2 * sum(m) + s2 + u2 + w2
        f = lam ** ((deg2 - d0) >> 1)
        out[(m, s2, u2, w2, q * lam, spin)] = (re * f, im * f)
    scaled = SectionExpr(section.ctx, out).mul_monomial(r=Q(-1, 2))
    scaled = scaled.scaled(lam ** (n + 1))
    return TwistResult(scaled, lam**d0, lam)


def untwist(section, I, n, mu):
    """Inverse of `twist` up to a positive constant (enough for eigenchecks)."""
    mu = Q(mu)
    lam = Q(I) + n + abs(mu)
    lifted = section.mul_monomial(r=Q(1, 2))
    degs = {2 * sum(m) + s2 + u2 + w2 for (m, s2, u2, w2, _q, _s) in lifted.terms}
    if not degs:
        return lifted
    if len({d & 1 for d in degs}) > 1:
        raise ValueError("mixed homogeneity parity")
    d0 = min(degs)
    inv = 1 / lam
    out = {}
    for (m, s2, u2, w2, q, spin), (re, im) in lifted.terms.items():
        deg2 = 2 * sum(m) + s2 + u2 + w2
        f = inv ** ((deg2 - d0) >> 1)
        out[(m, s2, u2, w2, q * inv, spin)] = (re * f, im * f)
    return SectionExpr(section.ctx, out)
