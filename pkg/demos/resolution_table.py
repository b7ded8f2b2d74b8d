"""Print det(B_{n^-,0}) = det(B_{n,0}) + det(B^u) for a few n, with both oracles.

Run:  python demos/resolution_table.py
"""

from obcalc.links3.bracket import bracket_det
from obcalc.links3 import braid_of, detsum, hf_model, minus, resolution_sites, unoriented_resolution_det

rows = [(1,), (2,), (1, 1), (2, 1), (1, 0, 1), (3, 1, 2)]
print(f"{'n':12} {'det n-':>7} {'det n':>6} {'det Bu':>7} {'goeritz':>8} {'hat rank':>9}")
for n in rows:
    ds = detsum(n)
    g = unoriented_resolution_det(n, method="goeritz")
    print(f"{str(n):12} {ds.det_minus:7} {ds.det_n:6} {ds.det_resolution:7} {g:8} {hf_model(n).hat_rank:9}")

n = (1, 1)
print()
print("B_{n^-,0} for n = (1,1):", braid_of(minus(n), 0))
print("resolution sites (last block):", resolution_sites(n))
# earlier sites resolve a different entry and give other values
crossings = braid_of(minus(n), 0).crossings()
print("marked bracket at each sigma_1 site:",
      {i: bracket_det(crossings, i) for i, (g, _) in enumerate(crossings) if g == 1})
