"""Certified completion of nonzero rank-1 tensors from uniform samples.

The library reduces completion to a pair of linear systems sharing one sparse
0/1 design matrix: entry signs solve a GF(2) system and entry log-magnitudes
solve a real system.  A single GF(2) rank check on the sampled rows certifies
that the reconstruction is exact, and a Monte-Carlo harness measures how many
uniform draws that takes.
"""

from .complete import (
    CompletedTensor,
    SampleSet,
    TrialRecord,
    build_systems,
    certify,
    complete,
    full_rank_target,
    run_pipeline,
    sample_uniform,
)
from .dense import RealSystem, real_rank, real_solve
from .errors import (
    BadParameter,
    ContradictorySamples,
    Inconsistent,
    InconsistentMagnitudes,
    InconsistentSigns,
    IndexOutOfRange,
    Rank1Error,
    ZeroCoordinate,
    ZeroValue,
)
from .gf2 import BitMatrix, BitSystem, SpanTracker, gf2_in_span, gf2_rank, gf2_solve
from .tensor import (
    FactorList,
    ObservedEntry,
    all_indices,
    bit_to_sign,
    decompose_value,
    dense_tensor,
    design_row,
    entry,
    index_to_ordinal,
    make_tensor,
    ordinal_to_index,
    sign_to_bit,
)

__all__ = [
    "BadParameter",
    "BitMatrix",
    "BitSystem",
    "CompletedTensor",
    "ContradictorySamples",
    "FactorList",
    "Inconsistent",
    "InconsistentMagnitudes",
    "InconsistentSigns",
    "IndexOutOfRange",
    "ObservedEntry",
    "Rank1Error",
    "RealSystem",
    "SampleSet",
    "SpanTracker",
    "TrialRecord",
    "ZeroCoordinate",
    "ZeroValue",
    "all_indices",
    "bit_to_sign",
    "build_systems",
    "certify",
    "complete",
    "decompose_value",
    "dense_tensor",
    "design_row",
    "entry",
    "full_rank_target",
    "gf2_in_span",
    "gf2_rank",
    "gf2_solve",
    "index_to_ordinal",
    "make_tensor",
    "ordinal_to_index",
    "real_rank",
    "real_solve",
    "run_pipeline",
    "sample_uniform",
    "sign_to_bit",
]
