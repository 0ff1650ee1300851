from abc import ABC, abstractmethod

from epsilon_lab.datamodels import MachinePresentation, TransducerPresentation


class Loader(ABC):

    @abstractmethod
    def load(self) -> MachinePresentation | TransducerPresentation:
        pass
