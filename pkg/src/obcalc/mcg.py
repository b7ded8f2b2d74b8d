"""Mapping classes of the once-holed torus as words in Dehn twists.

The mapping class group of S_{1,1} (rel boundary) is identified with the
3-strand braid group via t_a -> sigma_1, t_b -> sigma_2.  Classification goes
through the image in SL(2, Z) and the free-product structure of PSL(2, Z):

    sigma_1 -> R = [[1, 1], [0, 1]]      sigma_2 -> [[1, 0], [-1, 1]]

With these images (sigma_1 sigma_2)^3 = -I, so the half twist h = (t_a t_b)^3
maps to -I and the boundary twist h^2 maps to I.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

MCG_ALPHABET = frozenset({"a", "b"})


class WordError(ValueError):
    """Malformed word text or alphabet mismatch."""


class NotPeriodicError(ValueError):
    pass


# --------------------------------------------------------------------------
# words


def _normalize(letters):
    out = []
    for curve, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == curve:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((curve, merged))
        else:
            out.append((curve, exp))
    return tuple(out)


@dataclass(frozen=True)
class TwistWord:
    """A product of Dehn twists, read left to right.

    ``letters`` is a tuple of ``(curve_id, exponent)``; adjacent letters on the
    same curve are merged on construction and zero exponents are dropped.
    ``alphabet`` is optional; when set, every letter must use it.
    """

    letters: tuple = ()
    alphabet: Optional[frozenset] = field(default=None, compare=False)

    def __post_init__(self):
        letters = _normalize((str(c), int(e)) for c, e in self.letters)
        object.__setattr__(self, "letters", letters)
        if self.alphabet is not None:
            alphabet = frozenset(self.alphabet)
            object.__setattr__(self, "alphabet", alphabet)
            stray = {c for c, _ in letters} - alphabet
            if stray:
                raise WordError(f"letters {sorted(stray)} outside alphabet {sorted(alphabet)}")

    @classmethod
    def identity(cls, alphabet=None):
        return cls((), alphabet)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def curves(self):
        return {c for c, _ in self.letters}

    def exponent_sum(self):
        return sum(e for _, e in self.letters)

    def inverse(self):
        return TwistWord(tuple((c, -e) for c, e in reversed(self.letters)), self.alphabet)

    def __invert__(self):
        return self.inverse()

    def __mul__(self, other):
        return compose(self, other)

    def __pow__(self, p):
        if p < 0:
            return self.inverse() ** (-p)
        return TwistWord(self.letters * p, self.alphabet)

    def is_positive(self):
        """True when the word is a product of right-handed twists only."""
        return all(e > 0 for _, e in self.letters)

    def substitute(self, mapping):
        """Replace curve ids; a mapping value of ``None`` deletes the letter."""
        out = []
        for c, e in self.letters:
            target = mapping.get(c, c)
            if target is not None:
                out.append((target, e))
        return TwistWord(tuple(out))

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(c if e == 1 else f"{c}^{e}" for c, e in self.letters)


def compose(w1, w2):
    """Concatenate ``w1`` then ``w2`` (the monodromy w1 . w2)."""
    if w1.alphabet is not None and w2.alphabet is not None and w1.alphabet != w2.alphabet:
        raise WordError(
            f"mismatched alphabets {sorted(w1.alphabet)} and {sorted(w2.alphabet)}"
        )
    alphabet = w1.alphabet if w1.alphabet is not None else w2.alphabet
    return TwistWord(w1.letters + w2.letters, alphabet)


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_'()+\-.]*?)(?:\^([+-]?\d+))?$")


def parse_word(text, alphabet=None):
    """Parse ``"a b^-1 a^3"``-style text.

    A single upper-case letter is shorthand for the inverse of its lower-case
    curve (``A`` == ``a^-1``).  ``"1"`` and the empty string give the identity.
    """
    text = text.strip()
    if text in ("", "1"):
        return TwistWord((), alphabet)
    letters = []
    for token in text.split():
        m = _TOKEN.match(token)
        if not m:
            raise WordError(f"bad token {token!r}")
        curve, exp = m.group(1), int(m.group(2)) if m.group(2) is not None else 1
        if len(curve) == 1 and curve.isupper():
            curve, exp = curve.lower(), -exp
        letters.append((curve, exp))
    return TwistWord(tuple(letters), alphabet)


def mcg_word(text_or_letters):
    """A word over the S_{1,1} alphabet {a, b}."""
    if isinstance(text_or_letters, str):
        return parse_word(text_or_letters, MCG_ALPHABET)
    return TwistWord(tuple(text_or_letters), MCG_ALPHABET)


# --------------------------------------------------------------------------
# SL(2, Z)


@dataclass(frozen=True)
class SL2Matrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ArithmeticError(f"determinant of {self.rows()} is not 1")

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, o):
        return SL2Matrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self):
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, p):
        base = self if p >= 0 else self.inverse()
        out = SL2Matrix.identity()
        for _ in range(abs(p)):
            out = out @ base
        return out

    def __neg__(self):
        return SL2Matrix(-self.a, -self.b, -self.c, -self.d)

    @property
    def trace(self):
        return self.a + self.d

    def is_scalar(self):
        return self.b == 0 and self.c == 0 and self.a == self.d


SIGMA1 = SL2Matrix(1, 1, 0, 1)
SIGMA2 = SL2Matrix(1, 0, -1, 1)
_GENERATORS = {"a": SIGMA1, "b": SIGMA2}


def _require_mcg(w):
    stray = w.curves() - MCG_ALPHABET
    if stray:
        raise WordError(f"letters {sorted(stray)} are not in {{a, b}}")


def to_braid_matrix(w):
    """Image of ``w`` in SL(2, Z) (the reduced Burau matrix at t = -1)."""
    _require_mcg(w)
    out = SL2Matrix.identity()
    for c, e in w:
        out = out @ (_GENERATORS[c] ** e)
    return out


# --------------------------------------------------------------------------
# PSL(2, Z) = Z/2 * Z/3 words
#
# With s = [[0,-1],[1,0]] and u = R s, in PSL(2,Z):  sigma_1 = u s,
# sigma_2 = s u.  Syllables are "s" or an int 1/2 standing for u^1, u^2.

_S = "s"
_SYL = {
    ("a", 1): (1, _S),
    ("a", -1): (_S, 2),
    ("b", 1): (_S, 1),
    ("b", -1): (2, _S),
}


def _push(stack, syl):
    if stack and (stack[-1] == _S) == (syl == _S):
        top = stack.pop()
        if syl != _S:
            merged = (top + syl) % 3
            if merged:
                stack.append(merged)
    else:
        stack.append(syl)


def _psl_word(w):
    stack = []
    for c, e in w:
        unit = _SYL[(c, 1 if e > 0 else -1)]
        for _ in range(abs(e)):
            for syl in unit:
                _push(stack, syl)
    # cyclic reduction
    while len(stack) >= 2 and (stack[0] == _S) == (stack[-1] == _S):
        first, last = stack[0], stack.pop()
        if first == _S:
            stack.pop(0)
        else:
            merged = (first + last) % 3
            if merged:
                stack[0] = merged
            else:
                stack.pop(0)
    return stack


def _blocks(syllables):
    """Exponents e of the cyclic block sequence (s u^e)(s u^e)..."""
    if len(syllables) < 2:
        return None
    if syllables[0] != _S:
        syllables = syllables[1:] + syllables[:1]
    return [syllables[i + 1] for i in range(0, len(syllables), 2)]


def least_rotation(seq):
    """Lexicographically least cyclic rotation of a tuple."""
    seq = tuple(seq)
    if not seq:
        return seq
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


# --------------------------------------------------------------------------
# normal forms


@dataclass(frozen=True)
class Periodic:
    fdtc: Fraction
    kind = "periodic"


@dataclass(frozen=True)
class Reducible:
    kind = "reducible"


@dataclass(frozen=True)
class PseudoAnosov:
    """h^d t_b t_a^{-n_1} ... t_b t_a^{-n_k}, up to conjugation.

    ``n`` is kept in its lexicographically least rotation.
    """

    d: int
    n: tuple
    kind = "pseudo-anosov"

    def __post_init__(self):
        n = tuple(int(x) for x in self.n)
        if not n or min(n) < 0 or max(n) == 0:
            raise ValueError(f"invalid n-tuple {n}")
        object.__setattr__(self, "n", least_rotation(n))


NormalForm3 = Periodic | Reducible | PseudoAnosov


def classify(w):
    """Nielsen-Thurston type of a word over {a, b}.

    Periodic when the SL(2,Z) image is elliptic or +-I, reducible when it is
    parabolic of infinite order, pseudo-Anosov when |trace| > 2.  For the
    pseudo-Anosov case the n-tuple is read from the reduced PSL(2,Z) word and
    d is forced by the exponent sum e(w) = 6d + k - sum(n).
    """
    _require_mcg(w)
    mat = to_braid_matrix(w)
    tr = mat.trace
    if abs(tr) < 2 or mat.is_scalar():
        return Periodic(fdtc_periodic(w, _checked=True))
    if abs(tr) == 2:
        return Reducible()

    blocks = _blocks(_psl_word(w))
    if blocks is None or 1 not in blocks or 2 not in blocks:
        raise ArithmeticError(f"trace {tr} but PSL word {blocks} is not hyperbolic")
    # rotate so a u^1 block leads; each u^1 opens an entry, u^2 blocks count
    start = blocks.index(1)
    blocks = blocks[start:] + blocks[:start]
    n = []
    for e in blocks:
        if e == 1:
            n.append(0)
        else:
            n[-1] += 1
    k, total = len(n), sum(n)
    rest = w.exponent_sum() - k + total
    if rest % 6:
        raise ArithmeticError(f"exponent sum {w.exponent_sum()} inconsistent with n={n}")
    d = rest // 6
    if (tr > 0) != (d % 2 == 0):
        raise ArithmeticError(f"trace sign {tr} disagrees with d={d}")
    return PseudoAnosov(d, tuple(n))


def normal_form_word(n, d):
    """The word h^d t_b t_a^{-n_1} ... t_b t_a^{-n_k}."""
    letters = [("a", 1), ("b", 1)] * (3 * d) if d >= 0 else [("b", -1), ("a", -1)] * (-3 * d)
    for ni in n:
        letters += [("b", 1), ("a", -ni)]
    return TwistWord(tuple(letters), MCG_ALPHABET)


def fdtc_periodic(w, _checked=False):
    """Fractional Dehn twist coefficient of a periodic word.

    The boundary twist (t_a t_b)^6 is central with exponent sum 12, so on
    periodic words the coefficient is exponent_sum / 12.
    """
    if not _checked:
        _require_mcg(w)
        if not isinstance(classify(w), Periodic):
            raise NotPeriodicError(f"{w} is not periodic")
    return Fraction(w.exponent_sum(), 12)


def murasugi_ops(n, which):
    """``minus`` adds 1 to the last entry, ``zero`` appends 0, ``cycle`` rotates left."""
    n = tuple(n)
    if which == "minus":
        return n[:-1] + (n[-1] + 1,)
    if which == "zero":
        return n + (0,)
    if which == "cycle":
        return n[1:] + n[:1]
    raise ValueError(f"unknown operation {which!r}")


# --------------------------------------------------------------------------
# reduced Burau over Z[t, t^-1]; faithful on B_3, used for the direct (m, k)


def _pmul(p, q):
    out = {}
    for i, x in p.items():
        for j, y in q.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _padd(p, q):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _mmul(x, y):
    return tuple(
        tuple(_padd(_pmul(x[i][0], y[0][j]), _pmul(x[i][1], y[1][j])) for j in range(2))
        for i in range(2)
    )


_ONE, _ZERO = {0: 1}, {}
_BURAU = {
    ("a", 1): (({1: -1}, _ONE), (_ZERO, _ONE)),
    ("a", -1): (({-1: -1}, {-1: 1}), (_ZERO, _ONE)),
    ("b", 1): ((_ONE, _ZERO), ({1: 1}, {1: -1})),
    ("b", -1): ((_ONE, _ZERO), (_ONE, {-1: -1})),
}


def burau(w):
    """Reduced Burau matrix of ``w``; entries are ``{exponent: coeff}`` dicts."""
    _require_mcg(w)
    out = ((_ONE, _ZERO), (_ZERO, _ONE))
    for c, e in w:
        g = _BURAU[(c, 1 if e > 0 else -1)]
        for _ in range(abs(e)):
            out = _mmul(out, g)
    return out


def periodic_data(w):
    """Smallest m with w^m a power t_delta^k of the boundary twist, and that k.

    Decided by the faithful Burau image: t_delta maps to t^6 * I.
    """
    _require_mcg(w)
    mat = to_braid_matrix(w)
    for m in range(1, 7):
        if mat ** m == SL2Matrix.identity():
            break
    else:
        raise NotPeriodicError(f"{w} has infinite order in PSL(2, Z)")
    (p, q), (r, s) = burau(w ** m)
    if q or r or p != s or len(p) != 1:
        raise NotPeriodicError(f"{w}^{m} is not central")
    (power, coeff), = p.items()
    if coeff != 1 or power % 6:
        raise NotPeriodicError(f"{w}^{m} is not a power of the boundary twist")
    return m, power // 6
