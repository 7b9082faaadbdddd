from src.witness.certificate import big_h_x, certify_no_6cycle, det_a, h_x
from src.witness.constructions import (
    BaseCycleConstruction,
    EightCycleConstruction,
    FourCycleConstruction,
    MixedSixCycleConstruction,
    SameParitySixCycleConstruction,
    normalized_equation,
    witness_for,
    witness_girth4,
    witness_girth6_mixed,
    witness_girth6_samepairity,
    witness_girth8,
)
from src.witness.propagate import (
    adjacency_residual,
    closing_orientation,
    propagate_cycle,
    pull_back,
)
from src.witness.verifier import verify_witness

__all__ = [
    "BaseCycleConstruction",
    "EightCycleConstruction",
    "FourCycleConstruction",
    "MixedSixCycleConstruction",
    "SameParitySixCycleConstruction",
    "adjacency_residual",
    "big_h_x",
    "certify_no_6cycle",
    "closing_orientation",
    "det_a",
    "h_x",
    "normalized_equation",
    "propagate_cycle",
    "pull_back",
    "verify_witness",
    "witness_for",
    "witness_girth4",
    "witness_girth6_mixed",
    "witness_girth6_samepairity",
    "witness_girth8",
]
