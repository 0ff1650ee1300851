from typing import Any

from typeguard import typechecked

from epsilon_lab.core.catalog import build_model
from epsilon_lab.datamodels import CatalogModel, MachinePresentation, TransducerPresentation
from epsilon_lab.loaders.loader import Loader


class CatalogLoader(Loader):
    """Builds a named model from the catalog."""

    @typechecked
    def __init__(self, name: str | CatalogModel, params: dict[str, Any] | None = None):
        self.name = name
        self.params = dict(params or {})

    def load(self) -> MachinePresentation | TransducerPresentation:
        return build_model(self.name, **self.params)
