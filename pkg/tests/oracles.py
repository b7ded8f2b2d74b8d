"""Independent reference computations used only by the tests.

Nothing here imports the code it checks beyond plain data types.
"""

from __future__ import annotations

import itertools

import sympy


# ---- matrices --------------------------------------------------------------

SYM_S1 = sympy.Matrix([[1, 1], [0, 1]])
SYM_S2 = sympy.Matrix([[1, 0], [-1, 1]])


def sym_braid_matrix(letters):
    """Product of generator images for ``((curve, exp), ...)`` with curves a/b or 1/2."""
    out = sympy.eye(2)
    for c, e in letters:
        g = SYM_S1 if c in ("a", 1) else SYM_S2
        out = out * (g ** e)
    return out


# ---- Kauffman bracket by brute-force state sum ------------------------------


class _UF:
    def __init__(self):
        self.p = {}

    def find(self, x):
        self.p.setdefault(x, x)
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        self.p[self.find(a)] = self.find(b)


def _loops(crossings, choice):
    """Number of loops in the closed-braid state; choice[p] is 'h' or 'v'."""
    L = len(crossings)
    if L == 0:
        return 3
    uf = _UF()
    # node (slot, p): the strand segment on slot 0..2 just before crossing p
    for p, (g, _) in enumerate(crossings):
        q = (p + 1) % L
        lo, hi = g - 1, g
        for s in range(3):
            if s not in (lo, hi):
                uf.union((s, p), (s, q))
        if choice[p] == "h":
            uf.union((lo, p), (lo, q))
            uf.union((hi, p), (hi, q))
        else:
            uf.union((lo, p), (hi, p))
            uf.union((lo, q), (hi, q))
    return len({uf.find((s, p)) for s in range(3) for p in range(L)})


def state_sum_bracket(crossings, marker=None):
    """<D> as a sympy expression in A, over all 2^c smoothings."""
    A = sympy.Symbol("A")
    delta = -(A ** 2) - A ** -2
    total = 0
    for bits in itertools.product("hv", repeat=len(crossings)):
        if marker is not None and bits[marker] != "v":
            continue
        w = 1
        for p, ((g, s), b) in enumerate(zip(crossings, bits)):
            if p == marker:
                continue
            # positive crossing: A on the identity smoothing, A^-1 on the cup-cap one
            w *= (A if b == "h" else A ** -1) if s > 0 else (A ** -1 if b == "h" else A)
        total += w * delta ** (_loops(crossings, bits) - 1)
    return sympy.expand(total), A


def state_sum_det(crossings, marker=None):
    expr, A = state_sum_bracket(crossings, marker)
    z = sympy.exp(sympy.I * sympy.pi / 4)
    val = sympy.nsimplify(sympy.simplify(sympy.Abs(expr.subs(A, z))))
    return int(val)


# ---- periodic domains ---------------------------------------------------------


def sym_solve_domain(k, m):
    """Solve m N d_1 + sum_{i=1}^{r-1} s_i(-k_i d_i + k_{i+1} d_{i+1}) = t (d_1 + ... + d_r), t = -k_r.

    Returns (N, [s_0, ..., s_{r-1}]) with s_0 = m N / k_1.
    """
    r = len(k)
    N = sympy.Symbol("N")
    s = sympy.symbols(f"s1:{r}")
    t = -k[-1]
    coeff = {j: 0 for j in range(1, r + 1)}
    coeff[1] += m * N
    for i in range(1, r):
        coeff[i] += -k[i - 1] * s[i - 1]
        coeff[i + 1] += k[i] * s[i - 1]
    eqs = [sympy.Eq(coeff[j], t) for j in range(1, r + 1)]
    sol = sympy.solve(eqs, [N, *s], dict=True)
    assert len(sol) == 1
    sol = sol[0]
    s_vals = [sympy.Rational(m) * sol[N] / k[0]] + [sol[x] for x in s]
    return sol[N], s_vals


def sym_d3_closed(k, m, f_value):
    """Closed-form d3 with s from the sympy solver and f supplied."""
    r = len(k)
    I = next((i + 1 for i, x in enumerate(k) if x), None)
    if r == 1:
        I = 1
    total = -sympy.Rational(f_value) + sympy.Rational(3 * I - r - 4, 4)
    if r == 1:
        return total
    # tail solutions: the s-sequence of the tail starting at index I-1
    tail = list(k[I - 1 :])
    _, s_tail = sym_solve_domain(tail, m)
    s = {I - 1 + i: v for i, v in enumerate(s_tail)}
    for j in range(I - 1, r - 1):
        num = (k[-1] * (j - r) - k[j] * s[j]) ** 2
        den = m * k[j] * s[j] * s[j + 1]
        total -= sympy.Rational(1, 4) * num / den
    return sympy.nsimplify(total)
