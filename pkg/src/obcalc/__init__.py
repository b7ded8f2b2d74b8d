"""Exact computations for open books, mapping classes of the once-holed torus,
3-braid closures and contact invariants."""

from obcalc.mcg import TwistWord, classify, fdtc_periodic, parse_word
from obcalc.openbook import OpenBookDesc, SurfaceSig, CurveInfo
from obcalc.domains import PeriodicData

__all__ = [
    "TwistWord",
    "classify",
    "fdtc_periodic",
    "parse_word",
    "OpenBookDesc",
    "SurfaceSig",
    "CurveInfo",
    "PeriodicData",
]

__version__ = "0.1.0"
