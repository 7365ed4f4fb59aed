"""The shifted-row family: locally identical yet (generically) not regular.

Rows of a thin rectangular lattice move in couples, each couple shifted
left or right by c relative to the previous one.  Every member of the
family has identical b-clusters at every point, but only the all-R, all-L
and alternating sequences are regular systems.  Local identity up to just
below 4R cannot force global regularity.
"""

import time
from fractions import Fraction as F

from delone import (ShiftSequence, ShiftedRowSpec, certify_auto, classify,
                    delone_params, gen_shifted_rows)

print(__doc__)

t0 = time.time()
handles = {}
for word in ("RRRRRR", "RLRLRL", "RLLRLR"):
    spec = ShiftedRowSpec(a=F(1, 5), b=F(1), c=F(1, 20),
                          sequence=ShiftSequence.parse(word))
    handles[word] = gen_shifted_rows(spec)

params = delone_params(handles["RLLRLR"])
print(f"family parameters: a=1/5 b=1 c=1/20 -> r = {float(params.r)}, "
      f"R = {float(params.R):.6f}, 4R = {4 * float(params.R):.6f}")

print("\nevery member has the same b-clusters (N(b) = 1):")
for word, handle in handles.items():
    print(f"  {word}: N(1) = {classify(handle, 1).n}")

print("\nat rho = 4R the aperiodic member splits into classes:")
four_r = params.R * 4
for word in ("RRRRRR", "RLLRLR"):
    n = classify(handles[word], four_r).n
    print(f"  {word}: N(4R) = {n}")

print("\ncertification (auto rho0 scan on the window):")
for word, handle in handles.items():
    report = certify_auto(handle, "regular")
    label = report.verdict + ("-on-window" if report.window_limited
                              and report.verdict == "satisfied" else "")
    print(f"  {word}: {label}")

print(f"\n({time.time() - t0:.1f}s)")
