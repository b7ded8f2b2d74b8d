"""Closed 3-braids B_{n,d}: determinants, the resolution identity, rank models
and the support-genus classifier for the family xi_{n,d}."""

from __future__ import annotations

from dataclasses import dataclass, field

from obcalc.links3.braid import (
    Braid3Word,
    BraidError,
    braid_of,
    determinant,
    minus,
    parse_braid,
    sl2_image,
)
from obcalc.links3.bracket import bracket_det
from obcalc.links3.goeritz import goeritz_det
from obcalc.mcg import murasugi_ops

METHODS = ("burau", "bracket-oracle")


@dataclass(frozen=True)
class DetReport:
    braid: Braid3Word
    determinant: int
    method: str

    def as_dict(self):
        return {"braid": str(self.braid), "determinant": self.determinant, "method": self.method}


def det_report(b, method="burau"):
    if method == "burau":
        value = determinant(b)
    elif method == "bracket-oracle":
        value = bracket_det(b.crossings())
    else:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    return DetReport(b, value, method)


def _check_n(n):
    n = tuple(int(x) for x in n)
    if not n or min(n) < 0 or max(n) == 0:
        raise BraidError(f"invalid n-tuple {n}: entries must be >= 0 with one positive")
    return n


def resolution_sites(n):
    """Crossing indices of the sigma_1^-1 crossings in the last block of B_{n^-,0}.

    These are the sites whose oriented resolution is B_{n,0}; resolving a
    crossing of an earlier block lowers a different entry of n^-.
    """
    n = _check_n(n)
    total = len(braid_of(minus(n), 0).crossings())
    return tuple(range(total - (n[-1] + 1), total))


def unoriented_resolution_det(n, site=None, method="bracket"):
    """det(B^u_{n^-,0}).

    B^u is the unoriented resolution of B_{n^-,0} at a crossing of the last
    block (see :func:`resolution_sites`); by default the last one.  ``method`` is ``bracket``
    (TL_3 evaluation) or ``goeritz``.
    """
    n = _check_n(n)
    crossings = braid_of(minus(n), 0).crossings()
    sites = resolution_sites(n)
    if site is None:
        site = sites[-1]
    if site not in sites:
        raise BraidError(f"crossing {site} is not in the last block of B_(n^-,0); sites are {sites}")
    if method == "bracket":
        return bracket_det(crossings, marker=site)
    if method == "goeritz":
        return goeritz_det(crossings, marker=site)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class DetSum:
    n: tuple
    det_minus: int
    det_n: int
    det_resolution: int

    @property
    def holds(self):
        return self.det_minus == self.det_n + self.det_resolution


def detsum(n, site=None):
    """The three determinants in det(B_{n^-,0}) = det(B_{n,0}) + det(B^u)."""
    n = _check_n(n)
    return DetSum(
        n,
        determinant(braid_of(minus(n), 0)),
        determinant(braid_of(n, 0)),
        unoriented_resolution_det(n, site),
    )


@dataclass(frozen=True)
class HFModel:
    """HF^+ of -Sigma(B_{n,2}) as towers in grading 0 plus one extra generator."""

    n: tuple
    tower_count: int
    extra_generator_grading: int = 1

    @property
    def hat_rank(self):
        return self.tower_count + 2

    def as_dict(self):
        return {
            "n": list(self.n),
            "tower_count": self.tower_count,
            "extra_generator_grading": self.extra_generator_grading,
            "hat_rank": self.hat_rank,
        }


def hf_model(n):
    n = _check_n(n)
    return HFModel(n, determinant(braid_of(n, 0)))


# --------------------------------------------------------------------------
# support genus

ZERO = "zero"
ONE = "one"
UNKNOWN_D1 = "unknown_d1"

BASE_N = (1,)
BASE_D = 2


@dataclass(frozen=True)
class ChainStep:
    op: str  # base | minus | zero | cycle | twist
    n: tuple
    d: int
    note: str = ""

    def as_dict(self):
        return {"op": self.op, "n": list(self.n), "d": self.d, "note": self.note}


def condition_r_chain(n, d):
    """Steps carrying Condition R from xi_{(1),2} to xi_{n,d} (d >= 2)."""
    n = _check_n(n)
    if d < BASE_D:
        raise ValueError("Condition R is only propagated for d >= 2")
    steps = [ChainStep("base", BASE_N, BASE_D, "c1 non-torsion and c^+ nonzero; capped genus-one book")]
    # rotate so the first entry is positive, build that rotation, rotate back
    shift = next(i for i, x in enumerate(n) if x > 0)
    target = n[shift:] + n[:shift]
    cur = BASE_N
    for _ in range(target[0] - 1):
        cur = murasugi_ops(cur, "minus")
        steps.append(ChainStep("minus", cur, BASE_D))
    for x in target[1:]:
        cur = murasugi_ops(cur, "zero")
        steps.append(ChainStep("zero", cur, BASE_D))
        for _ in range(x):
            cur = murasugi_ops(cur, "minus")
            steps.append(ChainStep("minus", cur, BASE_D))
    for _ in range((len(n) - shift) % len(n)):
        cur = murasugi_ops(cur, "cycle")
        steps.append(ChainStep("cycle", cur, BASE_D))
    assert cur == n, (cur, n)
    for dd in range(BASE_D + 1, d + 1):
        steps.append(ChainStep("twist", n, dd, "extra positive full twist"))
    return tuple(steps)


@dataclass(frozen=True)
class SupportGenus:
    n: tuple
    d: int
    value: str
    reason: str
    chain: tuple = field(default=())

    def as_dict(self):
        return {
            "n": list(self.n),
            "d": self.d,
            "support_genus": self.value,
            "reason": self.reason,
            "chain": [s.as_dict() for s in self.chain],
        }


def support_genus(n, d):
    n = _check_n(n)
    if d <= 0:
        return SupportGenus(n, d, ZERO, "overtwisted for d <= 0, and overtwisted structures are planar")
    if d == 1:
        return SupportGenus(n, d, UNKNOWN_D1, "Condition R is not available at d = 1")
    return SupportGenus(
        n, d, ONE, "tight with Condition R, so not planar; genus-one page exists",
        condition_r_chain(n, d),
    )


__all__ = [
    "Braid3Word", "BraidError", "DetReport", "DetSum", "HFModel", "SupportGenus", "ChainStep",
    "braid_of", "condition_r_chain", "det_report", "detsum", "determinant", "hf_model", "minus",
    "parse_braid", "resolution_sites", "sl2_image", "support_genus", "unoriented_resolution_det",
    "ZERO", "ONE", "UNKNOWN_D1",
]
