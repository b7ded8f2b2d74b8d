"""Goeritz-matrix determinant of a closed 3-braid diagram.

The white regions are the pieces of the band between strands 1 and 2 (cut
at every sigma_1 site) plus the region on the far side of strand 3, which
every sigma_2 crossing touches.  A sigma_1 crossing joins two consecutive
band regions; a sigma_2 crossing joins a band region to the outer one.

A smoothing marker at a crossing replaces it by the vertical (cup/cap)
smoothing: at a sigma_1 site that deletes the edge, at a sigma_2 site it
merges its two white regions.
"""

from __future__ import annotations


def bareiss_det(mat):
    """Exact integer determinant by fraction-free elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = [list(row) for row in mat]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def goeritz_matrix(crossings, marker=None):
    """Reduced Goeritz matrix, or ``None`` when the diagram is split."""
    L = len(crossings)
    sites = [p for p, (g, _) in enumerate(crossings) if g == 1]
    if not sites or not any(g == 2 for g, _ in crossings):
        return None
    c1 = len(sites)
    outer = c1

    # band region j lies between site j and site j+1 (cyclically)
    region_at = [0] * L
    j = c1 - 1
    for p in range(L):
        if j + 1 < c1 and sites[j + 1] == p:
            j += 1
        elif p == sites[0]:
            j = 0
        region_at[p] = j

    parent = list(range(c1 + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for p, (g, sign) in enumerate(crossings):
        if g == 1:
            j = region_at[p]
            if p != marker:
                edges.append(((j - 1) % c1, j, sign))
        else:
            if p == marker:
                parent[find(region_at[p])] = find(outer)
            else:
                edges.append((region_at[p], outer, -sign))

    roots = sorted({find(x) for x in range(c1 + 1)})
    idx = {r: i for i, r in enumerate(roots)}
    size = len(roots)
    G = [[0] * size for _ in range(size)]
    for u, v, eta in edges:
        u, v = idx[find(u)], idx[find(v)]
        if u == v:
            continue
        G[u][v] -= eta
        G[v][u] -= eta
    for i in range(size):
        G[i][i] = -sum(G[i][j] for j in range(size) if j != i)
    return [row[:-1] for row in G[:-1]]


def goeritz_det(crossings, marker=None):
    """|det| of the reduced Goeritz matrix; 0 for split diagrams."""
    G = goeritz_matrix(tuple(crossings), marker)
    if G is None:
        return 0
    return abs(bareiss_det(G))
