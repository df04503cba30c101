"""Uniform random plane trees with a fixed child sequence.

The package is organised around one pipeline: validate a child sequence,
rotate a random permutation of it into a tree sequence, decode that into a
tree under a chosen vertex order, and compare the statistics of many such
draws against closed-form tail bounds.
"""

from .bounds import (
    DominationViolation,
    MartingaleDiag,
    TailReport,
    height_tail_bound,
    martingale_diag,
    martingale_violations,
    mcdiarmid_bound,
    monte_carlo_report,
    pathmax_bound,
    prefixmin_bound,
    width_tail_bound,
)
from .codec import (
    OrderKind,
    PlaneTree,
    QueueProcess,
    decode,
    dfs_indices,
    encode,
    tree_from_text,
    tree_to_counts_text,
    tree_to_parent_text,
)
from .errors import (
    CapExceededError,
    DegenerateSequenceError,
    EmptyInputError,
    NegativeEntryError,
    NotTreeSequenceError,
    PlaneTreeError,
    SequenceFormatError,
    SumMismatchError,
)
from .kernels import BACKEND, CampaignStats, run_campaign
from .lattice import (
    LatticePath,
    Rotation,
    half_shift,
    is_tree_sequence,
    partial_sums,
    rotated_peak,
    tree_rotation,
)
from .rng import RandomStream, mix64
from .sampler import (
    SubdivisionPlan,
    apply_subdivision,
    enumerate_trees,
    random_composition,
    reduce_tree,
    sample_subdivision,
    sample_uniform,
    tree_sequences,
)
from .seqcore import (
    ChildSequence,
    DegreeHistogram,
    SequenceInvariants,
    count_trees,
    format_sequence_compact,
    histogram,
    invariants,
    log_count_trees,
    one_reduce,
    parse_sequence_text,
    validate,
)
from .treestats import Profile, height, profile, width

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CampaignStats",
    "CapExceededError",
    "ChildSequence",
    "DegenerateSequenceError",
    "DegreeHistogram",
    "DominationViolation",
    "EmptyInputError",
    "LatticePath",
    "MartingaleDiag",
    "NegativeEntryError",
    "NotTreeSequenceError",
    "OrderKind",
    "PlaneTree",
    "PlaneTreeError",
    "Profile",
    "QueueProcess",
    "Rotation",
    "SequenceFormatError",
    "SequenceInvariants",
    "SubdivisionPlan",
    "SumMismatchError",
    "TailReport",
    "apply_subdivision",
    "count_trees",
    "decode",
    "dfs_indices",
    "encode",
    "enumerate_trees",
    "format_sequence_compact",
    "half_shift",
    "height",
    "height_tail_bound",
    "histogram",
    "invariants",
    "is_tree_sequence",
    "log_count_trees",
    "martingale_diag",
    "martingale_violations",
    "mcdiarmid_bound",
    "mix64",
    "monte_carlo_report",
    "one_reduce",
    "parse_sequence_text",
    "partial_sums",
    "pathmax_bound",
    "prefixmin_bound",
    "profile",
    "random_composition",
    "reduce_tree",
    "rotated_peak",
    "run_campaign",
    "sample_subdivision",
    "sample_uniform",
    "tree_from_text",
    "tree_rotation",
    "tree_sequences",
    "tree_to_counts_text",
    "tree_to_parent_text",
    "RandomStream",
    "validate",
    "width",
    "width_tail_bound",
    "__version__",
]
