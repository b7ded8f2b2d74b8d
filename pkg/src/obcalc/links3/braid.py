"""3-braid words and their closures' determinants."""

from __future__ import annotations

import re
from dataclasses import dataclass

from obcalc.mcg import SL2Matrix, SIGMA1, SIGMA2, TwistWord, MCG_ALPHABET


class BraidError(ValueError):
    pass


def _reduce(letters):
    out = []
    for gen, exp in letters:
        if gen not in (1, 2):
            raise BraidError(f"3-braids have generators 1 and 2, got {gen}")
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class Braid3Word:
    """Freely reduced word in sigma_1, sigma_2 as ``((gen, exp), ...)``."""

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(tuple((int(g), int(e)) for g, e in self.letters)))

    def __mul__(self, other):
        return Braid3Word(self.letters + other.letters)

    def __pow__(self, p):
        base = self if p >= 0 else self.inverse()
        return Braid3Word(base.letters * abs(p))

    def inverse(self):
        return Braid3Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def crossings(self):
        """One ``(gen, +-1)`` per crossing of the closure diagram."""
        out = []
        for g, e in self.letters:
            out.extend([(g, 1 if e > 0 else -1)] * abs(e))
        return tuple(out)

    @property
    def crossing_count(self):
        return sum(abs(e) for _, e in self.letters)

    def rotate(self, i):
        c = self.crossings()
        if not c:
            return self
        i %= len(c)
        return Braid3Word(c[i:] + c[:i])

    def to_twist_word(self):
        return TwistWord(tuple(("a" if g == 1 else "b", e) for g, e in self.letters), MCG_ALPHABET)

    @classmethod
    def from_twist_word(cls, w):
        return cls(tuple((1 if c == "a" else 2, e) for c, e in w.letters))

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(f"s{g}" if e == 1 else f"s{g}^{e}" for g, e in self.letters)


_TOKEN = re.compile(r"^(?:s|σ|sigma_?)?([12])(?:\^([+-]?\d+))?$|^([abAB])(?:\^([+-]?\d+))?$")


def parse_braid(text):
    """Parse ``"s2 s1^-1"``; ``a``/``b`` (inverse ``A``/``B``) are also accepted."""
    letters = []
    for tok in text.replace("*", " ").split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise BraidError(f"bad braid token {tok!r}")
        if m.group(1):
            letters.append((int(m.group(1)), int(m.group(2) or 1)))
        else:
            ch = m.group(3)
            exp = int(m.group(4) or 1)
            letters.append((1 if ch.lower() == "a" else 2, -exp if ch.isupper() else exp))
    return Braid3Word(tuple(letters))


def braid_of(n, d):
    """(s1 s2)^{3d} s2 s1^{-n_1} ... s2 s1^{-n_k}."""
    n = tuple(int(x) for x in n)
    if not n or min(n) < 0 or max(n) == 0:
        raise BraidError(f"invalid n-tuple {n}")
    letters = [(1, 1), (2, 1)] * (3 * d) if d >= 0 else [(2, -1), (1, -1)] * (-3 * d)
    for ni in n:
        letters += [(2, 1), (1, -ni)]
    return Braid3Word(tuple(letters))


def minus(n):
    """n^- : last entry increased by one."""
    n = tuple(n)
    return n[:-1] + (n[-1] + 1,)


_GEN = {1: SIGMA1, 2: SIGMA2}


def sl2_image(b):
    out = SL2Matrix(1, 0, 0, 1)
    for g, e in b.letters:
        out = out @ (_GEN[g] ** e)
    return out


def determinant(b):
    """|det(rho(b) - I)| = |2 - tr rho(b)| for the SL2 image rho."""
    return abs(2 - sl2_image(b).trace)
