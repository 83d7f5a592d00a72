"""How third-mode creation switches on with peak mirror speed.

The ratio N3/N1 measures population of the band above the drive frequency.
It follows 3*v^2/16 in the peak speed v = 2*pi*a/l0 while the motion is
slow, then drops below that law once v is a sizable fraction of the speed
of light.  Any population here is creation driven by velocity alone, since
T = 2*L0 rules out any ray hitting the mirror twice.
"""

from __future__ import annotations

import math

from dce import MirrorLaw, band_ratio

print(f"{'v':>10} {'N3/N1':>12} {'3v^2/16':>12}")
for a in (1e-3, 1e-2, 0.1 / (2.0 * math.pi), 0.3 / (2.0 * math.pi), 1e-1):
    law = MirrorLaw(L0=1.0, a=a, l0=1.0, T=2.0)
    v = 2.0 * math.pi * a
    ratio = band_ratio(law)
    print(f"{v:10.4g} {ratio:12.4g} {3.0 * v * v / 16.0:12.4g}")

print("\nThe last column is the slow-motion scaling; the measured ratio")
print("detaches from it as v approaches the speed of light.")
print("(`dce ratio-sweep --a-grid 1e-3,1e-2,1e-1` writes ratio_sweep.csv)")
