"""Compare the two c1^2 channels on the case that tells them apart.

Run:  python demos/d3_conventions.py
"""

from obcalc.domains import PeriodicData
from obcalc.dthree import DISCRIMINATING, binding_bound, calibrate, d3

for channel in ("printed", "first_principles"):
    rep = d3(DISCRIMINATING, channel, offset=0)
    bound = binding_bound(DISCRIMINATING, channel, offset=0)
    print(f"{channel:17} d3 = {rep.d3()}  shifts = {[str(s) for s in rep.per_cap_shifts]}  margin = {bound.margin}")

cal = calibrate()
print()
print("calibration picks:", cal.selected)
print("anchor d3 from the table:", cal.anchor_d3, " residual offset:", cal.residual_offset)

# a few more inputs under the selected channel
for k in [(0, 1), (1, 1), (1, 1, 1), (2, 3, 5)]:
    pd = PeriodicData(1, len(k), 6, k)
    print(k, "d3 =", d3(pd, cal.selected, offset=0).d3())
