"""Exact Fredholm and Browder theory for shift-type operators."""

from .arith import INF, ExtNat, GaussianRational, ext, ext_diff
from .completion import (
    COMPLETION_TARGETS,
    CompletionVerdict,
    Witness,
    construct_witness,
    decide_complete,
)
from .dsl import DslProgram, parse_dsl, parse_expr
from .errors import (
    ArityDomain,
    DslSyntaxError,
    FredkitError,
    IndexOutOfSpace,
    Infeasible,
    InvalidWitness,
    NotGraphExpressible,
    NotLowerSemiBrowder,
    NotSemiFredholm,
    NotUpperSemiBrowder,
    UnsupportedForLambda,
)
from .expr import (
    Adjoint,
    Amplify,
    BackShift,
    Bilateral,
    Diag,
    DirectSum,
    Expr,
    Jordan,
    Power,
    Shift,
    TriBlock,
    TriMatrix,
    WitnessMap,
    adjoint,
    assemble_block,
    pretty,
)
from .graph import BasisGraph, ChainCensus, chain_census, lower_to_graph
from .growth import GrowthSeq
from .invariants import (
    FredholmClass,
    FredholmSignature,
    classify,
    decompose_lower_browder,
    decompose_upper_browder,
    kernel_growth,
    normal_form,
    normal_form4,
    samuel_multiplicities,
    signature,
)
from .oracle import TruncationReport, truncated_growth_check
from .regions import Region, member, region_ops
from .spectra import (
    completion_predicate,
    completion_spectrum,
    piecewise_signature,
    signature_at,
    spectrum,
)
from .suites import SuiteReport, run_suite

__all__ = [
    "INF",
    "ExtNat",
    "GaussianRational",
    "ext",
    "ext_diff",
    "COMPLETION_TARGETS",
    "CompletionVerdict",
    "Witness",
    "construct_witness",
    "decide_complete",
    "DslProgram",
    "parse_dsl",
    "parse_expr",
    "ArityDomain",
    "DslSyntaxError",
    "FredkitError",
    "IndexOutOfSpace",
    "Infeasible",
    "InvalidWitness",
    "NotGraphExpressible",
    "NotLowerSemiBrowder",
    "NotSemiFredholm",
    "NotUpperSemiBrowder",
    "UnsupportedForLambda",
    "Adjoint",
    "Amplify",
    "BackShift",
    "Bilateral",
    "Diag",
    "DirectSum",
    "Expr",
    "Jordan",
    "Power",
    "Shift",
    "TriBlock",
    "TriMatrix",
    "WitnessMap",
    "adjoint",
    "assemble_block",
    "pretty",
    "BasisGraph",
    "ChainCensus",
    "chain_census",
    "lower_to_graph",
    "GrowthSeq",
    "FredholmClass",
    "FredholmSignature",
    "classify",
    "decompose_lower_browder",
    "decompose_upper_browder",
    "kernel_growth",
    "normal_form",
    "normal_form4",
    "samuel_multiplicities",
    "signature",
    "TruncationReport",
    "truncated_growth_check",
    "Region",
    "member",
    "region_ops",
    "completion_predicate",
    "completion_spectrum",
    "piecewise_signature",
    "signature_at",
    "spectrum",
    "SuiteReport",
    "run_suite",
]

__version__ = "0.1.0"
