"""The sixteen heralded states at the single-photon level.

With the coherent drive alpha in port 1 and zero or one photon in each
ancilla port / detector, every heralded output is, up to normalization,

    (c0 + c1 a^dag + c2 a^dag^2) |u11 alpha>

for row-specific coefficients.  This script tabulates all sixteen rows at a
working point, groups them into the six categories, and shows the pairings
and the phi -> 2 pi - phi symmetry of the success probabilities.
"""
import numpy as np

from sixport import HeraldSpec, LABELS, compose, table1_coeffs

ALPHA, PHI = 2.0, 2.0
U = compose(PHI)

CATEGORY = {
    1: "coherent", 2: "coherent", 3: "coherent", 4: "coherent",
    5: "one photon added", 6: "one photon added",
    7: "two photons added",
    8: "coherent + one-added", 9: "coherent + one-added",
    10: "coherent + one-added", 11: "coherent + one-added",
    12: "coherent + one-added", 13: "coherent + one-added",
    14: "one-added + two-added", 15: "one-added + two-added",
    16: "all three pieces",
}

print(f"Working point: |alpha| = {ALPHA}, phi = {PHI}\n")
print(f"{'state':6s} {'(n2,n3,m2,m3)':14s} {'|c0|':>7s} {'|c1|':>7s} {'|c2|':>7s} "
      f"{'norm':>8s} {'prob':>9s}  category")
for index in range(1, 17):
    pattern = LABELS[index]
    st = table1_coeffs(HeraldSpec(*pattern, alpha_mag=ALPHA, phi=PHI), U)
    print(f"psi{index:<3d} {str(pattern):14s} {abs(st.c0):7.4f} {abs(st.c1):7.4f} "
          f"{abs(st.c2):7.4f} {st.norm:8.4f} {st.probability:9.6f}  {CATEGORY[index]}")

print("\nEqual-probability pairs (swap of the two ancilla ports):")
for a, b in [(2, 3), (5, 6), (8, 9), (10, 11), (12, 13), (14, 15)]:
    pa = table1_coeffs(HeraldSpec(*LABELS[a], alpha_mag=ALPHA, phi=PHI), U).probability
    pb = table1_coeffs(HeraldSpec(*LABELS[b], alpha_mag=ALPHA, phi=PHI), U).probability
    print(f"  p(psi{a}) - p(psi{b}) = {pa - pb:+.2e}")

print("\nMirror symmetry about phi = pi:")
for index in (1, 8, 16):
    p1 = table1_coeffs(HeraldSpec(*LABELS[index], alpha_mag=ALPHA, phi=PHI),
                       compose(PHI)).probability
    p2 = table1_coeffs(HeraldSpec(*LABELS[index], alpha_mag=ALPHA, phi=2 * np.pi - PHI),
                       compose(2 * np.pi - PHI)).probability
    print(f"  psi{index}: p(phi) - p(2 pi - phi) = {p1 - p2:+.2e}")
