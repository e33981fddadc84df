"""Exact computation in Specker algebras over totally ordered domains.

Finite boolean algebras, boolean powers in orthogonal and decreasing
step-function form, the unique lattice order, de Vries proximities and
their pointwise lift, proximity morphisms with star composition, and an
independent pointwise oracle for differential verification.
"""

from .boolalg import Algebra, BoolElem, ba_apply, make_algebra, make_free_algebra
from .morphisms import (
    DVMorphism,
    ProxMorphism,
    apply_prox_morphism,
    check_dv_morphism,
    enumerate_boolean_homs,
    eta,
    functor_id,
    functor_id_morphism,
    functor_sp,
    functor_sp_morphism,
    identity_dv,
    identity_prox,
    lift_morphism,
    naturality_check,
    restrict_prox_morphism,
    sample_morphism_axioms,
    star_compose_dv,
    star_compose_prox,
    tau,
)
from .orthogonal import (
    OrthElem,
    annihilator_idempotent,
    orth_add,
    orth_const,
    orth_embed,
    orth_is_nonneg,
    orth_join,
    orth_leq,
    orth_meet,
    orth_mul,
    orth_neg,
    orth_normalize,
    orth_scale,
    orth_sub,
    orth_unit,
    orth_zero,
)
from .pointwise import (
    PointFn,
    atom_values,
    oracle_diff,
    orth_of_pointfn,
    pointwise_apply,
    random_orth,
    random_pointfn,
    random_steps,
    steps_of_pointfn,
)
from .proximity import (
    AxiomResult,
    ProxRel,
    ProxReport,
    check_devries,
    enumerate_devries,
    interpolant,
    leq_proximity,
    lift_check,
    restrict_lift,
    sample_proximity_axioms,
    sample_related_pair,
)
from .scalars import Scalar, format_scalar, parse_scalar
from .steps import (
    CompatibleSteps,
    StepElem,
    compatible_decreasing,
    decreasing_decomposition,
    from_decomposition,
    is_idempotent,
    orth_to_decreasing,
    step_add,
    step_const,
    step_embed,
    step_join,
    step_leq,
    step_meet,
    step_mul,
    step_mul_nonneg,
    step_neg,
    step_one,
    step_scale,
    step_scale_pos,
    step_sub,
    step_zero,
    to_orth,
    to_steps,
)
from .terms import ParseError, Term, default_binding, normalize_term, parse_term
