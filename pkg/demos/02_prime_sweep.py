"""Three digits at ratio 1/3: residue completeness against collision counting."""
import itertools
import math

from selfsim import SigmaSet, first_collision, hausdorff_upper, prime_decide

rows = []
for a, b in itertools.combinations(range(1, 10), 2):
    if math.gcd(a, b) != 1:
        continue
    s = SigmaSet((0, a, b))
    complete = prime_decide(s)
    col = first_collision(s, 6)
    dim = hausdorff_upper(s, 6)
    rows.append((str(s), complete, None if col is None else col.level, round(dim.value, 4)))

# Complete residue sets never collide; incomplete ones collide early and
# the level-6 dimension bound drops below one.
print(f"{'digits':<10} {'complete':<9} {'collision':<10} dim bound (n=6)")
for name, complete, lvl, d in rows:
    print(f"{name:<10} {str(complete):<9} {str(lvl):<10} {d}")

# A witness pair for {0,1,3}: both strings sum to the same point.
c = first_collision(SigmaSet((0, 1, 3)), 4)
a, b = ([int(d) for d in w] for w in c.witness)
print(f"collision in {{0,1,3}}: {a} and {b} both sum to {c.value}")
