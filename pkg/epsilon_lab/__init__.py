from .datamodels import (
    Configuration,
    CatalogModel,
    FigureId,
    Alphabet,
    MachinePresentation,
    TransducerPresentation,
    StationaryDistribution,
    WordDistribution,
    EncodingMode,
    ComplexityReport,
    CompletionPolicy,
    Verdict,
    OrderingVerdict,
    Trajectory,
    EpsilonLabError,
    ModelParseError,
    PresentationError,
    ComputationError,
)
from .loaders import Loader, ModelFileLoader, CatalogLoader, dump_model_file
from .core import AnalysisService

__all__ = [
    "AnalysisService",
    "Configuration",
    "CatalogModel",
    "FigureId",
    "Alphabet",
    "MachinePresentation",
    "TransducerPresentation",
    "StationaryDistribution",
    "WordDistribution",
    "EncodingMode",
    "ComplexityReport",
    "CompletionPolicy",
    "Verdict",
    "OrderingVerdict",
    "Trajectory",
    "Loader",
    "ModelFileLoader",
    "CatalogLoader",
    "dump_model_file",
    "EpsilonLabError",
    "ModelParseError",
    "PresentationError",
    "ComputationError",
]
