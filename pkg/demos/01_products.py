"""Multiplying curves in the four-punctured disk.

Two standard curves that cross are stacked and resolved by the Kauffman
state sum.  The answer is a combination of multicurves with coefficients in
Z[v, 1/v, beta]; q = v^2 and alpha = q + 1/q.
"""

from pathlib import Path

from planarskein import Multicurve, basis_product, parse_poly, theta_eval
from planarskein.geometry import assemble_stacked_diagram, svg_render

t12 = Multicurve.standard((1, 2))
t23 = Multicurve.standard((2, 3))
t13 = Multicurve.standard((1, 3))
t24 = Multicurve.standard((2, 4))

print("t12 * t23 =", basis_product(t12, t23, 3))
print("t23 * t12 =", basis_product(t23, t12, 3))
# c(...) names a curve that is not a standard one: here the curve around
# punctures 1 and 3 that passes below puncture 2.

print("\nt13 * t24 =", basis_product(t13, t24, 4))

# The symmetrised generators s_S satisfy a short identity; the residual is 0.
rel = parse_poly("s13*s24 - q^2*s12*s34 - qb^2*s23*s14 - a*s1234")
print("\nresidual of s13 s24 identity:", theta_eval(rel, 4))

out = Path(__file__).with_name("t13_over_t24.svg")
d = assemble_stacked_diagram([t13, t24], 4)
svg_render(d, out)
print(f"\nwrote {out.name}: {len(d.loops)} loops, {len(d.crossings)} crossings")
