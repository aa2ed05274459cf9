"""Exact arithmetic for the Romik interval map and its strange continued
fraction: orbits of rationals and quadratic surds, {0,2}-digit expansions
and convergents, rewrite operators, the planar natural extension with its
exactly-verifiable invariant measure, and occupation-ratio experiments."""

from .errors import RomikError
from .exact import (
    Mobius,
    QuadSurd,
    Scalar,
    compare,
    mobius_apply,
    mobius_compose,
    parse_scalar,
    surd_canonicalize,
)
from .expansion import (
    RomikExpansion,
    convergents,
    cylinder_interval,
    reconstruct,
    repetition_structure,
    romik_digits,
    tail_denominator_unbounded,
)
from .maps import Branch, DigitPair, OrbitRecord, classify, farey_step, inverse_branch, romik_orbit, romik_step
from .natext import (
    PlanarPoint,
    RationalRect,
    induced_step_O,
    marginal_density_check,
    natext_inverse,
    natext_step,
    oocf_jump,
    rect_measure,
    verify_invariance,
)
from .rcf import RcfExpansion, rcf_convergents, rcf_expand, rcf_expand_rational, rcf_expand_surd
from .rewrite import (
    SignedCF,
    convert_rcf_to_romik,
    insert,
    rcf_step_under_R,
    second_coordinate_rule,
    singularize,
    strange_insert,
)
from .stats import (
    RatioExperiment,
    hopf_ratio,
    measure_ratio_exact,
    ratio_experiment,
    skipped_convergents,
)

__version__ = "0.1.0"
