"""miczlab: exact-arithmetic verification lab for the hidden so(2, 2n+2)
symmetry of the odd-dimensional monopole-Kepler systems.

Everything is computed over Q(i): gamma matrices and twisting modules,
symbolic wavefunction sections closed under the symmetry generators, the
bound spectrum with its degeneracies, ladder towers, and the axial
Runge-Lenz expectation values.  Every identity is checked to exact zero.
"""

from .exact import GaussianRational, Q, Rational, beta_quotient, gamma_ratio
from .clifford import (
    GammaSystem,
    RepAction,
    build_gamma,
    build_rep,
    casimir_scalar,
    chiral_split,
)
from .sections import (
    Context,
    EvalPoint,
    SectionExpr,
    apply_gauge,
    canonicalize,
    derive,
    equal,
    evaluate,
    field_strength,
    pi,
    scale_argument,
)
from .spectrum import energy, laguerre, normalization, radial_ode_residual, twisted_radial_gram
from .reptheory import (
    Weight,
    branch_B_to_D,
    branch_D_to_B,
    degeneracy_table,
    module_highest_weight,
    weyl_dim,
)
from .dynsym import (
    Battery,
    GeneratorFamily,
    OperatorExpr,
    build_generator,
    hat,
    make_battery,
    twist,
    untwist,
    verify_commutators,
    verify_hamiltonian,
    verify_lemma1,
    verify_lemma2,
    verify_quadratic,
    verify_theorem,
)
from .ladder import (
    HighestSection,
    ZonalProfile,
    ad_expectation,
    gamma_eigencheck,
    highest_section,
    lower,
    raise_,
    zonal_from_section,
    zonal_integral,
)

__version__ = "0.1.0"
