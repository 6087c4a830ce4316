"""Subsums of multigeometric series: interval unions, Cantor sets and Cantorvals."""
from fractions import Fraction

from selfsim import (
    Multigeometric,
    counterexample_search,
    gns_classify,
    nitecki_classify,
    reduce_multigeometric,
)

for k, base in [((1, 8), 4), ((1, 2), 4), ((3, 2), 4), ((1,), 3), ((2, 5), 4)]:
    res = gns_classify(k, Fraction(1, base))
    print(f"({','.join(map(str, k))}; 1/{base})  sigma {res.sigma}  ->  {res.kind.value} [{res.route}]")

# Dividing out a coefficient divisible by the base keeps the type.
mg = Multigeometric((1, 8), 4)
print("reduced:", reduce_multigeometric(mg).k)

# Residue-complete and evenly spaced: one interval, ending at the series total.
nit = nitecki_classify(Multigeometric((1, 2), 4))
print(f"interval: [{nit.interval[0]}, {nit.interval[1]}]", "series total:", Multigeometric((1, 2), 4).total,
      "n/(n-1)*sum(k):", nit.printed_endpoint)

# Residue-incomplete digit sets that still pass every bounded test.
print("size 4, digits <= 9:", [str(s) for s in counterexample_search(4, 9)])
print("size 3, digits <= 20:", [str(s) for s in counterexample_search(3, 20)])
