"""The digit set {0, 1, 8, 9} at ratio 1/4: positive measure without hitting every residue."""
from selfsim import SigmaSet, level_intervals, level_measure, stable_intervals, decide_measure

sigma = SigmaSet((0, 1, 8, 9))
print("digits:", sigma, "ratio:", sigma.ratio)

# Residues mod 4 are 0, 1, 0, 1, so the residue route does not apply.
# The chain falls through to the vanishing-sum search.
rep = decide_measure(sigma, n_max=16, k_max=8)
print("verdict:", rep.verdict.value, "via", rep.fired_condition)
print("vanishing levels k per frequency n:", rep.certificates.vanishing_table.table)

# Outer covers: every level is the same two intervals.
for n in range(1, 5):
    print(f"level {n}:", level_intervals(sigma, n), " measure", level_measure(sigma, n))

# Two equal consecutive covers are a fixed point of x -> F_1 + x/4, hence equal E.
level, union = stable_intervals(sigma, 4)
print(f"E = {union} (stable from level {level}), measure {union.measure()}")
