"""Translates of E by its common divisor tile the line, and mu_n equidistributes mod delta."""
from selfsim import SigmaSet, pushforward_histogram, tiling_certificate

for digits in [(0, 1, 2), (3, 5, 7), (0, 1, 2, 3), (0, 2, 3, 5)]:
    t = tiling_certificate(SigmaSet(digits), 3, 5)
    print(f"{digits}: delta {t.delta}, window [-5,5] covered {t.covered}, "
          f"max overlap {t.max_overlap} <= {t.overlap_bound}, measure {t.lambda_e}")

# Exact sup-distance to the uniform law after reducing mod 1.
s = SigmaSet((0, 1, 2))
print("{0,1,2}:", [str(pushforward_histogram(s, 1, n)) for n in range(1, 9)])
s = SigmaSet((0, 1, 3))
print("{0,1,3}:", [str(pushforward_histogram(s, 1, n)) for n in range(1, 7)])
