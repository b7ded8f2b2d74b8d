"""Environment-driven switches.

``OBCALC_C1SQ_CHANNEL`` picks which c1^2 value feeds grading shifts
(``printed`` or ``first_principles``); ``OBCALC_D3_OFFSET`` adds a constant
to every reported d3 value. Both are read at call time.
"""

import os
from fractions import Fraction

CHANNELS = ("printed", "first_principles")


class ConfigError(ValueError):
    pass


def c1sq_channel(override=None):
    value = override if override is not None else os.environ.get("OBCALC_C1SQ_CHANNEL", "printed")
    if value not in CHANNELS:
        raise ConfigError(f"unknown c1^2 channel {value!r}; expected one of {CHANNELS}")
    return value


def d3_offset(override=None):
    if override is not None:
        return Fraction(override)
    raw = os.environ.get("OBCALC_D3_OFFSET", "0")
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad OBCALC_D3_OFFSET {raw!r}") from exc
