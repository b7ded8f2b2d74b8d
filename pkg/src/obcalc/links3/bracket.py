"""Kauffman bracket of closed 3-braid diagrams through the Temperley-Lieb
algebra TL_3, evaluated at A = zeta_8 (loop value delta = -A^2 - A^-2 = 0).

At that root of unity |<D>| is the determinant of the link.  A diagram is a
braid word plus at most one smoothing marker: the marked crossing is replaced
by the cup/cap smoothing e_i, which is how the non-braid resolution B^u is fed
in.  Cost is polynomial (the algebra has dimension 5).
"""

from __future__ import annotations

from obcalc.links3.cyclo8 import Cyclo8

A = Cyclo8.zeta(1)
A_INV = Cyclo8.zeta(-1)
DELTA = -(A * A) - A_INV * A_INV  # == 0

# basis words of TL_3 and the loop count of their closures
BASIS = ((), (1,), (2,), (1, 2), (2, 1))
LOOPS = {(): 3, (1,): 2, (2,): 2, (1, 2): 1, (2, 1): 1}


def _reduce_word(word):
    """Return (power of delta, reduced word)."""
    word = list(word)
    power = 0
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i] == word[i + 1]:
                del word[i + 1]
                power += 1
                changed = True
                break
            if i + 2 < len(word) and word[i] == word[i + 2]:
                del word[i + 1 : i + 3]
                changed = True
                break
    return power, tuple(word)


def tl_mul(x, y):
    out = {}
    for u, a in x.items():
        for v, b in y.items():
            power, w = _reduce_word(u + v)
            coef = a * b * (DELTA ** power if power else Cyclo8(1))
            if coef:
                out[w] = out.get(w, Cyclo8(0)) + coef
    return {w: c for w, c in out.items() if c}


def crossing_element(gen, sign, smoothed=False):
    if smoothed:
        return {(gen,): Cyclo8(1)}
    if sign > 0:
        return {(): A, (gen,): A_INV}
    return {(): A_INV, (gen,): A}


def closure_trace(x):
    total = Cyclo8(0)
    for w, c in x.items():
        total = total + c * DELTA ** (LOOPS[w] - 1)
    return total


# right multiplication by e_i on basis words, precomputed: word -> (delta power, word)
_RIGHT_E = {
    (u, i): _reduce_word(u + (i,)) for u in BASIS for i in (1, 2)
}


def bracket(crossings, marker=None):
    """<closure> in Z[zeta_8], normalized so the empty closure (3 loops) is delta^2."""
    x = {(): Cyclo8(1)}
    for p, (g, s) in enumerate(crossings):
        if p == marker:
            a, b = Cyclo8(0), Cyclo8(1)
        elif s > 0:
            a, b = A, A_INV
        else:
            a, b = A_INV, A
        out = {}
        for u, c in x.items():
            if a:
                out[u] = out.get(u, Cyclo8(0)) + c * a
            power, w = _RIGHT_E[(u, g)]
            if power and not DELTA:
                continue
            coef = c * b * DELTA ** power
            out[w] = out.get(w, Cyclo8(0)) + coef
        x = {w: c for w, c in out.items() if c}
    return closure_trace(x)


def bracket_det(crossings, marker=None):
    """|<D>| at A = zeta_8: the link determinant (0 for split diagrams)."""
    return bracket(tuple(crossings), marker).abs_int()
