"""Vanishing sums of roots of unity and the product formula for the Fourier transform."""
from selfsim import SigmaSet, vanishing_search, cyclotomic_poly, fourier_partial, vanishing_sum

print("Phi_9 coefficients:", cyclotomic_poly(9).coeffs)

# 1 + z**3 + z**6 vanishes at a primitive 9th root: the quotient is the witness.
cert = vanishing_sum([0, 3, 6], 9)
print("vanishes:", cert.vanishes, "quotient:", cert.quotient.coeffs, "verified:", cert.verify())

for digits, m in [((0, 1, 2), 3), ((0, 1, 8, 9), 4), ((0, 1, 3), 3)]:
    t = vanishing_search(digits, m, 9)
    print(digits, "levels:", t.table)

# The partial products hit an exact zero when some factor vanishes.
for digits in [(0, 1, 2), (0, 1, 8, 9), (0, 1, 3)]:
    s = SigmaSet(digits)
    vals = [abs(fourier_partial(s, 1, 1, K)) for K in (1, 2, 4, 8)]
    print(digits, "|partial product| for K = 1, 2, 4, 8:", [f"{float(v):.5f}" for v in vals])
