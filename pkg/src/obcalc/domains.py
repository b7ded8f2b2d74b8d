"""Periodic-domain arithmetic for the 2-handle cobordism of a capping step.

For periodic monodromy with boundary twisting coefficients k_i / m
(0 <= k_1 <= ... <= k_r), capping the first boundary component gives a
cobordism W whose second homology is carried by one triply-periodic domain.
Its boundary relation in H_1 of the Heegaard surface reduces to

    m N d_1 + sum_{i<r} s_i (-k_i d_i + k_{i+1} d_{i+1}) = t (d_1 + ... + d_r)

Everything here is exact over ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from obcalc import config


class DomainError(ValueError):
    pass


class TrivialFormError(DomainError):
    """Raised where a quantity exists only for a non-trivial intersection form."""


@dataclass(frozen=True)
class PeriodicData:
    """Genus, boundary count, common denominator m and numerators k (ascending).

    Negative numerators are representable (they describe overtwisted data);
    the domain solver and the d3 formula reject them.
    """

    g: int
    r: int
    m: int
    k: tuple

    def __post_init__(self):
        k = tuple(int(x) for x in self.k)
        object.__setattr__(self, "k", k)
        if self.r < 1:
            raise DomainError("periodic data needs at least one boundary component")
        if len(k) != self.r:
            raise DomainError(f"expected {self.r} numerators, got {len(k)}")
        if self.m < 1:
            raise DomainError(f"m must be positive, got {self.m}")
        if self.g < 0:
            raise DomainError(f"negative genus {self.g}")
        if list(k) != sorted(k):
            raise DomainError(f"numerators must be ascending, got {k}")

    @classmethod
    def from_unsorted(cls, g, m, k):
        """Sort ``k`` and return ``(data, permutation)`` with ``sorted[i] = k[perm[i]]``."""
        perm = sorted(range(len(k)), key=lambda i: (k[i], i))
        return cls(g, len(k), m, tuple(k[i] for i in perm)), tuple(perm)

    @property
    def fdtcs(self):
        return tuple(Fraction(x, self.m) for x in self.k)

    @property
    def nonnegative(self):
        return self.k[0] >= 0

    def tail(self, start):
        """Data left after capping the first ``start`` boundary components."""
        return PeriodicData(self.g, self.r - start, self.m, self.k[start:])


@dataclass(frozen=True)
class DomainSolution:
    """Solved relation with the normalization t = -k_r.

    ``s`` holds s_0, ..., s_{r-1}; s_0 is defined by the same closed formula
    and equals m N / k_1.
    """

    N: Fraction
    s: tuple
    t: Fraction
    I: int


@dataclass(frozen=True)
class TrivialForm:
    """Capping a boundary with zero twisting: W has trivial intersection form."""

    reason: str = "zero twisting coefficient"


def s_sequence(k, start=0):
    """s_i = -k_r (1/k_r + 1/k_{r-1} + ... + 1/k_{i+1}) for i = start .. r-1."""
    r = len(k)
    kr = k[-1]
    out = []
    for i in range(start, r):
        out.append(-kr * sum(Fraction(1, k[j]) for j in range(i, r)))
    return tuple(out)


def _require_nonnegative(pd):
    if not pd.nonnegative:
        raise DomainError(f"negative twisting coefficient in {pd.k}")


def solve_domain(pd):
    _require_nonnegative(pd)
    if pd.r < 2:
        raise DomainError("capping needs at least two boundary components")
    if pd.k[0] == 0:
        return TrivialForm()
    s = s_sequence(pd.k)
    N = Fraction(pd.k[0]) * s[0] / pd.m
    return DomainSolution(N=N, s=s, t=Fraction(-pd.k[-1]), I=1)


def euler_measure(pd):
    """Euler measure k_r (2 - 2g - r) / m of the generating domain."""
    if isinstance(solve_domain(pd), TrivialForm):
        raise TrivialFormError("trivial intersection form has no generating domain")
    return Fraction(pd.k[-1] * (2 - 2 * pd.g - pd.r), pd.m)


@dataclass(frozen=True)
class CobordismReport:
    form: str
    shift: Fraction
    channel: str
    euler_measure: Fraction | None = None
    self_intersection: Fraction | None = None
    c1_pairing: Fraction | None = None
    c1_squared_printed: Fraction | None = None
    c1_squared_fp: Fraction | None = None
    chi: int = 1
    b2_plus: int = 0
    signature: int = 0

    def shift_for(self, channel):
        """Grading shift recomputed under the other c1^2 channel."""
        if self.form == "trivial":
            return self.shift
        c1sq = self.c1_squared_printed if channel == "printed" else self.c1_squared_fp
        return grading_shift(c1sq, self.chi, self.signature)

    def as_dict(self):
        from obcalc.rational import fmt

        return {
            "form": self.form,
            "euler_measure": fmt(self.euler_measure),
            "self_intersection": fmt(self.self_intersection),
            "c1_pairing": fmt(self.c1_pairing),
            "c1_squared_printed": fmt(self.c1_squared_printed),
            "c1_squared_fp": fmt(self.c1_squared_fp),
            "shift": fmt(self.shift),
            "channel": self.channel,
        }


def grading_shift(c1sq, chi, signature):
    return (Fraction(c1sq) - 2 * chi - 3 * signature) / 4


def intersection_data(pd, channel=None):
    """Report for capping the first (smallest-k) boundary of ``pd``.

    Both c1^2 values are always computed: the closed expression
    (chi_hat - k_1 s_0 / m)^2 / (k_1 s_0 s_1 / m) and the pairing-over-square
    value <c1, H>^2 / H^2.  ``channel`` chooses which one sets ``shift``.
    """
    channel = config.c1sq_channel(channel)
    sol = solve_domain(pd)
    if isinstance(sol, TrivialForm):
        return CobordismReport(
            form="trivial",
            shift=grading_shift(0, 1, 0),
            channel=channel,
            self_intersection=Fraction(0),
        )
    s0, s1 = sol.s[0], sol.s[1]
    k1, kr, m = pd.k[0], pd.k[-1], pd.m
    chi_hat = euler_measure(pd)
    self_int = -sol.N * s1
    pairing = abs(sol.N)
    printed = Fraction((kr * (2 - 2 * pd.g - pd.r) - k1 * s0) ** 2) / (m * k1 * s0 * s1)
    fp = pairing ** 2 / self_int
    c1sq = printed if channel == "printed" else fp
    return CobordismReport(
        form="negative",
        shift=grading_shift(c1sq, 1, -1),
        channel=channel,
        euler_measure=chi_hat,
        self_intersection=self_int,
        c1_pairing=pairing,
        c1_squared_printed=printed,
        c1_squared_fp=fp,
        signature=-1,
    )
