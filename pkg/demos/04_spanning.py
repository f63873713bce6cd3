"""Spanning monomials and triangular coefficient matrices.

For a puncture profile e (puncture v used e_v times) the top-degree part of
the algebra has a basis of multicurves.  Suitable products of s-generators map
onto it by a triangular matrix with invertible diagonal, which is the core of
the spanning argument.  The normal form rewrites arbitrary products toward
such monomials.
"""

import json

from planarskein.expr import parse_poly
from planarskein.normalform import enumerate_profile_basis, normal_form, profile_report, sweep_profiles

basis = enumerate_profile_basis((1, 1, 1, 1, 1, 1))
print(len(basis), "top-degree curves for profile (1,1,1,1,1,1):")
print("  " + ", ".join(m.name() for m in basis))

rep = profile_report((1, 1, 1, 1, 1, 1))
print("\ntriangular:", rep["triangular"], "| unit diagonal:", rep["unit_diagonal"])
print("diagonal:", rep["diagonal"])

print("\nprofile (1,1,2,1,1):")
print(json.dumps({k: profile_report((1, 1, 2, 1, 1))[k] for k in ("monomials", "targets", "diagonal")}, indent=1))

reps = sweep_profiles()
print(f"\nall {len(reps)} profiles with total at most 6 certified:",
      all(r["triangular"] and not r["offenders"] for r in reps))

p = parse_poly("s24*s13*s12")
print("\nnormal form of s24 s13 s12:\n ", normal_form(p, 4))
