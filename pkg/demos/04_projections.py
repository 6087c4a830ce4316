"""Projections x + u*y of two planar attractors."""
from selfsim import FOUR_MAP, GASKET, ifs_decide, ifs_project, ifs_sweep, parse_exact

# Gasket: the projection {0, 1, u} at ratio 1/3 has positive measure exactly
# when the normalised digits 0, s, p (u = p/s) hit every residue mod 3.
rows = ifs_sweep(GASKET, 5)
positive = [u for u, rep in rows if rep.verdict.value == "PositiveMeasure"]
print("gasket, |p|, s <= 5, positive measure at u =", [str(u) for u in positive])
print("rule p + s = 0 mod 3 holds:", all((u.numerator + u.denominator) % 3 == 0 for u in positive))

# Four maps with the vertex (0, sqrt 2): no projection has a common divisor.
for text in ["1", "2", "1/2", "sqrt(2)", "2*sqrt(2)", "0"]:
    u = parse_exact(text)
    rep = ifs_decide(FOUR_MAP, u)
    digits = ifs_project(FOUR_MAP, u)
    print(f"u = {text:<10} digits {str(digits):<28} {rep.verdict.value} ({rep.fired_condition})")
