"""Ground-state Zeeman structure and the first-order magic field.

Walks through the static (undressed) physics: the eight hyperfine Zeeman
levels of 87Rb, the clock-transition shift versus field magnitude, and the
field where that shift is stationary.  Saves a figure next to this script
when matplotlib is available.
"""

import numpy as np

from dressedclock import (
    AtomSpec,
    breit_rabi_energy,
    find_static_magic_field,
    static_clock_shift,
)

atom = AtomSpec()

# --- level diagram -------------------------------------------------------
fields = np.linspace(0.0, 10.0, 201)
levels = {
    (f, m): np.array([breit_rabi_energy(atom, f, m, b) for b in fields])
    for f in (1, 2)
    for m in range(-f, f + 1)
}

print("Zeeman levels at 5 G (kHz relative to each manifold's zero-field energy):")
for (f, m), e in sorted(levels.items()):
    rel = (e[fields.searchsorted(5.0)] - e[0]) / 1e3
    print(f"  |F={f}, m={m:+d}>  {rel:+9.2f} kHz")

# --- the magic field -----------------------------------------------------
b_magic, curvature = find_static_magic_field(atom)
print(f"\nmagic field            : {b_magic:.6f} G")
print(f"shift at the minimum   : {static_clock_shift(atom, b_magic):+.2f} Hz")
print(f"curvature              : {curvature:.1f} Hz/G^2")
print(f"quadratic response C   : {curvature / 2:.1f} Hz/G^2")

# flat to first order: +/- 30 mG offsets respond purely quadratically,
# C * (30 mG)^2 ~ 0.39 Hz, identical on both sides
for offset in (-0.03, 0.0, +0.03):
    delta = static_clock_shift(atom, b_magic + offset) - static_clock_shift(atom, b_magic)
    print(f"  shift change at B_magic{offset:+.2f} G : {delta:+7.4f} Hz")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not available; skipping the figure")
else:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    for (f, m), e in levels.items():
        ax1.plot(fields, e / 1e9, "C0" if f == 1 else "C3", lw=1)
    ax1.set_xlabel("field magnitude (G)")
    ax1.set_ylabel("level energy (GHz)")
    ax1.set_title("ground-manifold Zeeman structure")

    window = np.linspace(2.6, 3.9, 300)
    shifts = [static_clock_shift(atom, b) for b in window]
    ax2.plot(window, shifts, "k")
    ax2.axvline(b_magic, color="C2", ls="--", label=f"magic field {b_magic:.4f} G")
    ax2.set_xlabel("field magnitude (G)")
    ax2.set_ylabel("clock shift (Hz)")
    ax2.set_title("clock shift and its stationary point")
    ax2.legend()
    fig.tight_layout()
    fig.savefig("demo01_static_levels.png", dpi=150)
    print("\nwrote demo01_static_levels.png")
