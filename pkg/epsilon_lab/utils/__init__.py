from .numbers import parse_probability, render_probability, render_bits
from .tables import write_table

__all__ = [
    "parse_probability",
    "render_probability",
    "render_bits",
    "write_table",
]
