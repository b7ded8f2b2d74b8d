"""Exact arithmetic in Z[zeta_8], zeta_8 = exp(i pi / 4).

Elements are stored as coefficient 4-tuples on 1, z, z^2, z^3 with z^4 = -1.
"""

from __future__ import annotations

from math import isqrt


class Cyclo8:
    __slots__ = ("c",)

    def __init__(self, c=(0, 0, 0, 0)):
        if isinstance(c, int):
            c = (c, 0, 0, 0)
        self.c = tuple(int(x) for x in c)

    @classmethod
    def zeta(cls, power=1):
        power %= 8
        sign = -1 if power >= 4 else 1
        coeffs = [0, 0, 0, 0]
        coeffs[power % 4] = sign
        return cls(coeffs)

    def __add__(self, o):
        o = _lift(o)
        return Cyclo8(tuple(x + y for x, y in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo8(tuple(-x for x in self.c))

    def __sub__(self, o):
        return self + (-_lift(o))

    def __mul__(self, o):
        o = _lift(o)
        out = [0] * 4
        for i, x in enumerate(self.c):
            if not x:
                continue
            for j, y in enumerate(o.c):
                if not y:
                    continue
                k = i + j
                if k >= 4:
                    out[k - 4] -= x * y
                else:
                    out[k] += x * y
        return Cyclo8(out)

    __rmul__ = __mul__

    def __pow__(self, p):
        out = Cyclo8(1)
        base = self if p >= 0 else self.inverse_unit()
        for _ in range(abs(p)):
            out = out * base
        return out

    def conjugate(self):
        # z^j -> z^-j = -z^(4-j)
        a, b, c, d = self.c
        return Cyclo8((a, -d, -c, -b))

    def inverse_unit(self):
        """Inverse of a root of unity (the only units this module inverts)."""
        inv = self.conjugate()
        if self * inv != Cyclo8(1):
            raise ArithmeticError(f"{self} is not a root of unity")
        return inv

    def norm(self):
        """|x|^2 as an integer; raises if it is irrational (a + b sqrt 2, b != 0)."""
        n = self * self.conjugate()
        a, b, c, d = n.c
        if b or c or d:
            raise ArithmeticError(f"|{self}|^2 = {n} is not an integer")
        return a

    def abs_int(self):
        n = self.norm()
        root = isqrt(n)
        if root * root != n:
            raise ArithmeticError(f"|{self}| is not an integer")
        return root

    def __eq__(self, o):
        try:
            return self.c == _lift(o).c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return f"Cyclo8{self.c}"


def _lift(x):
    if isinstance(x, Cyclo8):
        return x
    if isinstance(x, int):
        return Cyclo8(x)
    raise TypeError(f"cannot use {type(x).__name__} in Z[zeta_8]")
