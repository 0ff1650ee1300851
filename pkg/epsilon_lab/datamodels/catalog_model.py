from enum import Enum


class CatalogModel(Enum):
    PERIOD2 = "period2"
    COIN = "coin"
    DELAY = "delay"
    BOB = "bob"
    INVESTOR = "investor"
    INVERSION_INPUT = "inversion_input"
    INVERSION_STRATEGY = "inversion_strategy"
    ISING = "ising"
    TN = "tn"
    NO_AMBIGUITY = "no_ambiguity"
    IDENTITY = "identity"


class FigureId(Enum):
    FIG7 = "fig7"
    FIG8 = "fig8"
    FIG9 = "fig9"
    FIG10 = "fig10"
    FIG13 = "fig13"
    FIG18 = "fig18"
    INVERSION = "inversion"
    TN = "tn"
