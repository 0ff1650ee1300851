from .configuration import Configuration
from .catalog_model import CatalogModel, FigureId
from .presentations import (
    Alphabet,
    MachinePresentation,
    TransducerPresentation,
    StationaryDistribution,
    SuccessorMap,
    WordDistribution,
)
from .measures import (
    EncodingMode,
    EncodingProvenance,
    ValidationReport,
    ExcessEntropyEstimate,
    FidelityMatrix,
    QuantumEncoding,
    GramEnsemble,
    ComplexityReport,
    PropertyCheckReport,
)
from .inverse_draft import CompletionPolicy, InverseDraft
from .verdicts import Verdict, OutputCase, OrderingVerdict, RegionPoint, OutputComparison
from .trajectory import Trajectory
from .model_file import TransitionRecord, ModelFile, SweepRow
from .exceptions import (
    EpsilonLabError,
    ModelParseError,
    PresentationError,
    ComputationError,
    NotStochastic,
    NotUnifilar,
    AlphabetMismatch,
    MultipleRecurrentClasses,
    NotADistribution,
    ShapeMismatch,
    UnknownName,
    ParamOutOfRange,
    UnknownFigure,
    ConfigurationError,
    NonConvergence,
    NotPSD,
    SaturationInfeasible,
    OutputStateCorrespondenceAmbiguous,
    ZeroDivisor,
    DegenerateParameters,
    TargetOutOfRange,
    MissingE,
    TooShort,
)

__all__ = [
    "Configuration",
    "CatalogModel",
    "FigureId",
    "Alphabet",
    "MachinePresentation",
    "TransducerPresentation",
    "StationaryDistribution",
    "SuccessorMap",
    "WordDistribution",
    "EncodingMode",
    "EncodingProvenance",
    "ValidationReport",
    "ExcessEntropyEstimate",
    "FidelityMatrix",
    "QuantumEncoding",
    "GramEnsemble",
    "ComplexityReport",
    "PropertyCheckReport",
    "CompletionPolicy",
    "InverseDraft",
    "Verdict",
    "OutputCase",
    "OrderingVerdict",
    "RegionPoint",
    "OutputComparison",
    "Trajectory",
    "TransitionRecord",
    "ModelFile",
    "SweepRow",
    "EpsilonLabError",
    "ModelParseError",
    "PresentationError",
    "ComputationError",
    "NotStochastic",
    "NotUnifilar",
    "AlphabetMismatch",
    "MultipleRecurrentClasses",
    "NotADistribution",
    "ShapeMismatch",
    "UnknownName",
    "ParamOutOfRange",
    "UnknownFigure",
    "ConfigurationError",
    "NonConvergence",
    "NotPSD",
    "SaturationInfeasible",
    "OutputStateCorrespondenceAmbiguous",
    "ZeroDivisor",
    "DegenerateParameters",
    "TargetOutOfRange",
    "MissingE",
    "TooShort",
]
