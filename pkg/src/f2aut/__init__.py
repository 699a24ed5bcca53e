"""Decision procedures for automorphism problems in the rank-2 free group.

Words are freely reduced sequences over a, b and their inverses; the
package decides potential positivity, bounded translation equivalence,
and the fixed-point-group question by enumerating bounded chains of
Whitehead moves, with an independent brute-force oracle for
cross-checking. A compiled kernel accelerates the inner loops when
available; the pure Python twin is selected automatically otherwise.
"""

from .words import (
    AbelianImage,
    CyclicWord,
    Letter,
    ParseError,
    Word,
    abelianize,
    cyclic_length,
    cyclic_reduce,
    identity,
    is_positive,
    parse_word,
)
from .autos import (
    ALL_W1,
    Automorphism,
    InvalidAutomorphismError,
    WhiteheadW1,
    WhiteheadW2,
    apply,
    apply_cyclic,
    compose,
    inverse,
    named,
    parse_automorphism,
    render_automorphism,
)
from .chains import (
    Chain,
    ChainVisit,
    ImageSizeError,
    TraversalSummary,
    apply_chain,
    apply_chain_cyclic,
    chain_count,
    chain_powers,
    enumerate_chains,
    power_lengths,
)
from .subgroups import StallingsGraph, Subgroup, build, contains, subgroup_norm
from .decide import (
    BteReport,
    ContractViolationError,
    FixReport,
    PositivityReport,
    bounded_translation_equivalent,
    compute_delta_bounds,
    fixed_point_group,
    potentially_positive,
)
from .oracle import (
    AutoCatalog,
    CatalogDepthError,
    enumerate_automorphisms,
    oracle_potentially_positive,
    sample_ratios,
)
from .kernel import BACKEND

__version__ = "0.1.0"

__all__ = [
    "AbelianImage",
    "ALL_W1",
    "AutoCatalog",
    "Automorphism",
    "BACKEND",
    "BteReport",
    "CatalogDepthError",
    "Chain",
    "ChainVisit",
    "ContractViolationError",
    "CyclicWord",
    "FixReport",
    "ImageSizeError",
    "InvalidAutomorphismError",
    "Letter",
    "ParseError",
    "PositivityReport",
    "StallingsGraph",
    "Subgroup",
    "TraversalSummary",
    "WhiteheadW1",
    "WhiteheadW2",
    "Word",
    "abelianize",
    "apply",
    "apply_chain",
    "apply_chain_cyclic",
    "apply_cyclic",
    "bounded_translation_equivalent",
    "build",
    "chain_count",
    "chain_powers",
    "compose",
    "compute_delta_bounds",
    "contains",
    "cyclic_length",
    "cyclic_reduce",
    "enumerate_automorphisms",
    "enumerate_chains",
    "fixed_point_group",
    "identity",
    "inverse",
    "is_positive",
    "named",
    "oracle_potentially_positive",
    "parse_automorphism",
    "parse_word",
    "potentially_positive",
    "power_lengths",
    "render_automorphism",
    "subgroup_norm",
    "__version__",
]
