"""Axial wavenumbers of a lossy anisotropic eccentric guide, 1 to 10 GHz.

The benchmark geometry: 10 mm outer conductor, 2 mm inner conductor
displaced by 3 mm, filled with a uniaxial medium (eps = 5.6/5.6/4.6,
sigma = 0.38/0.38/0.34 S/m).  Frequency only enters through the complex
permittivity, so one eigensolve serves all 100 points.  Below cutoff the
modes are dominated by attenuation (large Im k_z); above cutoff the real
part takes over while the conductive loss keeps Im k_z positive.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from eccoax import EccentricGeometry, UniaxialMedium, sweep_frequency

OUT = pathlib.Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

geom = EccentricGeometry(r1_outer=10e-3, r0_inner=2e-3, offset=3e-3)
medium = UniaxialMedium(eps_rs=5.6, eps_rz=4.6, sigma_s=0.38, sigma_z=0.34)
freqs = np.linspace(1e9, 10e9, 100)

result = sweep_frequency(geom, medium, freqs, M=10, N=41, modes=2)
print(f"eigensolves: {result.provenance['eigensolves']} for {len(freqs)} points")

fig, (ax_re, ax_im) = plt.subplots(1, 2, figsize=(9, 4), sharex=True)
for row in result.rows:
    ghz = result.axis / 1e9
    ax_re.plot(ghz, row.values.real, label=row.label.short())
    ax_im.plot(ghz, row.values.imag, label=row.label.short())
ax_re.set_ylabel("Re k_z (rad/m)")
ax_im.set_ylabel("Im k_z (rad/m)")
for ax in (ax_re, ax_im):
    ax.set_xlabel("frequency (GHz)")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(OUT / "lossy_frequency_sweep.png", dpi=150)
print("wrote", OUT / "lossy_frequency_sweep.png")

for row in result.rows:
    kz1, kz10 = row.values[0], row.values[-1]
    print(
        f"{row.label.short():12s} k_z(1 GHz) = {kz1.real:7.2f}{kz1.imag:+8.2f}j   "
        f"k_z(10 GHz) = {kz10.real:7.2f}{kz10.imag:+8.2f}j  rad/m"
    )
