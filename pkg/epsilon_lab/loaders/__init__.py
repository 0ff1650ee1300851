from .loader import Loader
from .model_file_loader import (
    ModelFileLoader,
    presentation_from_model_file,
    model_file_from_presentation,
    dump_model_file,
)
from .catalog_loader import CatalogLoader

__all__ = [
    "Loader",
    "ModelFileLoader",
    "CatalogLoader",
    "presentation_from_model_file",
    "model_file_from_presentation",
    "dump_model_file",
]
