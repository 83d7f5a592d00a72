"""Where the discrete comb meets the single-mirror continuum.

Keep the drive fixed and grow the cavity: L0 = 4 packs four times as many
modes under the drive frequency, and the spectrum starts to trace out the
continuous band a single mirror in free space would radiate, a band that
cuts off at twice the drive frequency (mode n = 2 * L0 / l0 = 8 here).  At
weak drive everything beyond n = 8 is empty.  At strong drive a second arch
of purely velocity-driven creation appears above the cutoff.
"""

from __future__ import annotations

from dce import MirrorLaw, spectrum

N_SHOW = 20

for a in (0.01, 0.1):
    law = MirrorLaw(L0=4.0, a=a, l0=1.0, T=8.0)
    res = spectrum(law, n_max=40)
    peak = res.occupations.max()
    print(f"\nL0 = 4, a = {a:g}: total N = {res.total:.6g}")
    for n in range(1, N_SHOW + 1):
        occ = res.occupations[n - 1]
        bar = "#" * round(44 * occ / peak)
        edge = "  <- band edge 2*omega_drive" if n == 8 else ""
        print(f"  n={n:2d}  N = {occ:11.4e}  {bar}{edge}")
