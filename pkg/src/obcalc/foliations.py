"""Singularity data of pseudo-Anosov monodromies, and what capping does to it.

A pseudo-Anosov map on S_{g,r} has invariant foliations with p-pronged
interior singularities (p >= 3) and p_i singular points on boundary B_i.
Filling B_i with a disk puts a p_i-pronged singularity at the centre (none if
p_i = 2).  The bookkeeping obeys the Euler-Poincare balance

    2 chi(S) + 2 r = sum_interior (2 - p) + sum_boundary (2 - p_i)

FDTCs are carried as supplied inputs; nothing here computes them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from obcalc.openbook import SurfaceSig
from obcalc.rational import fmt, parse, pretty


class FoliationError(ValueError):
    pass


class NotCappable(FoliationError):
    """Capping a boundary with a single singularity leaves no pseudo-Anosov map."""


@dataclass(frozen=True)
class FoliationData:
    surface: SurfaceSig
    interior_prongs: tuple = ()
    boundary_sings: tuple = ()  # aligned with surface.boundary
    fdtc: tuple = ()  # aligned with surface.boundary

    def __post_init__(self):
        object.__setattr__(self, "interior_prongs", tuple(sorted(int(p) for p in self.interior_prongs)))
        object.__setattr__(self, "boundary_sings", tuple(int(p) for p in self.boundary_sings))
        object.__setattr__(self, "fdtc", tuple(Fraction(c) for c in self.fdtc))
        r = self.surface.r
        if len(self.boundary_sings) != r:
            raise FoliationError(f"{len(self.boundary_sings)} boundary counts for {r} boundary components")
        if len(self.fdtc) != r:
            raise FoliationError(f"{len(self.fdtc)} fdtc values for {r} boundary components")

    def sings(self, label):
        return self.boundary_sings[self._index(label)]

    def _index(self, label):
        try:
            return self.surface.boundary.index(str(label))
        except ValueError:
            raise FoliationError(f"no boundary labelled {label!r}") from None

    def to_json(self):
        b = self.surface.boundary
        return {
            "genus": self.surface.genus,
            "boundary": list(b),
            "interior_prongs": list(self.interior_prongs),
            "boundary_sings": {lab: p for lab, p in zip(b, self.boundary_sings)},
            "fdtc": {lab: fmt(c) for lab, c in zip(b, self.fdtc)},
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        boundary = tuple(str(x) for x in data.get("boundary", ()))
        sings = data.get("boundary_sings", {})
        fd = data.get("fdtc", {})
        if isinstance(sings, dict):
            sings = [sings[lab] for lab in boundary]
        if isinstance(fd, dict):
            fd = [fd[lab] for lab in boundary]
        return cls(
            SurfaceSig(int(data["genus"]), boundary),
            tuple(data.get("interior_prongs", ())),
            tuple(sings),
            tuple(parse(x) for x in fd),
        )


@dataclass(frozen=True)
class Violation:
    constraint: str
    detail: str
    amount: int

    def as_dict(self):
        return {"constraint": self.constraint, "detail": self.detail, "amount": self.amount}


@dataclass(frozen=True)
class Validation:
    violations: tuple = ()

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


def balance(fd):
    """(left side, right side) of the Euler-Poincare balance."""
    lhs = 2 * fd.surface.euler_characteristic + 2 * fd.surface.r
    rhs = sum(2 - p for p in fd.interior_prongs) + sum(2 - p for p in fd.boundary_sings)
    return lhs, rhs


def validate(fd):
    out = []
    for p in fd.interior_prongs:
        if p < 3:
            out.append(Violation("interior_prongs", f"interior singularity with {p} prongs (needs >= 3)", 3 - p))
    for lab, p in zip(fd.surface.boundary, fd.boundary_sings):
        if p < 1:
            out.append(Violation("boundary_sings", f"boundary {lab} has {p} singularities (needs >= 1)", 1 - p))
    lhs, rhs = balance(fd)
    if lhs != rhs:
        out.append(Violation("balance", f"2 chi + 2 r = {lhs} but the singularity sum is {rhs}", lhs - rhs))
    return Validation(tuple(out))


def cap_foliation(fd, label):
    i = fd._index(label)
    p = fd.boundary_sings[i]
    if p == 1:
        raise NotCappable(f"boundary {label} has one singularity: not cappable as pseudo-Anosov")
    if p < 1:
        raise FoliationError(f"boundary {label} has {p} singularities")
    keep = [j for j in range(fd.surface.r) if j != i]
    interior = fd.interior_prongs + ((p,) if p >= 3 else ())
    return FoliationData(
        SurfaceSig(fd.surface.genus, tuple(fd.surface.boundary[j] for j in keep)),
        interior,
        tuple(fd.boundary_sings[j] for j in keep),
        tuple(fd.fdtc[j] for j in keep),
    )


IN_IM_U = "in_im_U_all_d"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class UImageReport:
    verdict: str
    reason: str
    witness: str | None = None

    def as_dict(self):
        return {"verdict": self.verdict, "reason": self.reason, "witness": self.witness}


def u_image_report(fd):
    """Whether c^+ lies in the image of U^d for every d.

    Needs genus one and exactly two singularities on every boundary
    (orientable foliations); then one boundary coefficient below 1 suffices.
    """
    if fd.surface.genus != 1:
        return UImageReport(INCONCLUSIVE, f"hypothesis violated: genus {fd.surface.genus}, not 1")
    if fd.surface.r == 0:
        return UImageReport(INCONCLUSIVE, "hypothesis violated: no boundary")
    odd = [f"{lab}:{p}" for lab, p in zip(fd.surface.boundary, fd.boundary_sings) if p != 2]
    if odd:
        return UImageReport(INCONCLUSIVE, "hypothesis violated: boundary singularity counts " + ", ".join(odd))
    for lab, c in zip(fd.surface.boundary, fd.fdtc):
        if c < 1:
            return UImageReport(IN_IM_U, f"fdtc {pretty(c)} < 1 on {lab}", lab)
    return UImageReport(INCONCLUSIVE, "every fdtc is >= 1; no criterion applies")
