from fractions import Fraction

from epsilon_lab.datamodels import ModelParseError


def parse_probability(value: str | float) -> float:
    """Read a decimal literal or an exact rational ``n/d``."""
    if isinstance(value, bool):
        raise ModelParseError(f'Not a probability: {value!r}')
    if isinstance(value, (int, float)):
        return float(value)
    text = value.strip()
    try:
        if '/' in text:
            numerator, denominator = text.split('/', 1)
            return float(Fraction(int(numerator), int(denominator)))
        return float(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ModelParseError(f'Not a probability: {value!r}') from e


def render_probability(value: float) -> str:
    # 17 significant digits survive a round trip through float()
    return format(float(value), '.17g')


def render_bits(value: float | None, decimals: int = 9) -> str:
    if value is None:
        return 'n/a'
    # no negative zero
    value = round(value, decimals) + 0.0
    return f'{value:.{decimals}f}'
