import math
from typing import NamedTuple

MIN_EXPONENT = -308
MAX_EXPONENT = 308


class AttributeToken(NamedTuple):
    """A criterion value rounded to n_round significant digits: mantissa * 10^(exponent - n_round + 1)."""
    mantissa: int
    exponent: int


ZERO_TOKEN = AttributeToken(0, 0)


def _scaled_round(phi: float, scale: int) -> int:
    # two factors keep 10^scale representable near the ends of the exponent range
    half = scale // 2
    return round(phi * 10.0 ** half * 10.0 ** (scale - half))


def attr(phi: float, n_round: int) -> AttributeToken:
    if phi < 0:
        raise ValueError(f"Criterion values are nonnegative, got {phi}")
    if phi == 0:
        return ZERO_TOKEN
    lower = 10 ** (n_round - 1)
    if math.isinf(phi):
        return AttributeToken(lower, MAX_EXPONENT)
    exponent = min(max(math.floor(math.log10(phi)), MIN_EXPONENT), MAX_EXPONENT)
    mantissa = _scaled_round(phi, n_round - 1 - exponent)
    if mantissa < lower and exponent > MIN_EXPONENT:
        exponent -= 1
        mantissa = _scaled_round(phi, n_round - 1 - exponent)
    if mantissa >= 10 * lower and exponent < MAX_EXPONENT:
        exponent += 1
        mantissa = _scaled_round(phi, n_round - 1 - exponent)
    if mantissa >= 10 * lower:
        mantissa //= 10
    return AttributeToken(mantissa, exponent)
