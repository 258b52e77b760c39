"""Executable checks for the quotient E/W of mod A by a subcategory W."""

from .scope import Verdict, sampled_scope, universe_scope
from .certificate import (
    HereditaryCertificate,
    HereditaryFailure,
    ObjectData,
    check_hereditary_like,
)
from .quotient import (
    QuotientMap,
    epi_replacement,
    is_cokernel_of,
    is_kernel_of,
    quotient_cokernel,
    quotient_inverse,
    quotient_kernel,
    quotient_morphism_class,
)
from .audit import abelian_audit, quasi_abelian_audit
from .epic import (
    EpicTriangleSets,
    RelativeStructure,
    cluster_tilting_check,
    compute_epic_sets,
    relative_membership,
)
from .cotorsion import perp_sets, twin_cotorsion_check
from .finiteness import enough_projectives, locally_finite_report

__all__ = [
    "Verdict", "sampled_scope", "universe_scope",
    "HereditaryCertificate", "HereditaryFailure", "ObjectData", "check_hereditary_like",
    "QuotientMap", "epi_replacement", "is_cokernel_of", "is_kernel_of", "quotient_cokernel",
    "quotient_inverse", "quotient_kernel", "quotient_morphism_class",
    "abelian_audit", "quasi_abelian_audit",
    "EpicTriangleSets", "RelativeStructure", "cluster_tilting_check", "compute_epic_sets",
    "relative_membership",
    "perp_sets", "twin_cotorsion_check",
    "enough_projectives", "locally_finite_report",
]
