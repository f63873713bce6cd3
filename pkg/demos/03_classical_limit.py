"""The classical limit.

At q = 1 the generators become trace functions of 2x2 matrices of
determinant 1: t_S is minus the trace of the product, s_S is minus the trace
of the product of trace-free parts.  Every quantized relation must vanish
there, and the skein image of any polynomial must agree with evaluating the
polynomial directly on matrices.
"""

from planarskein.classical import (IDENTITIES, check_classical_identity, eval_element_classical,
                                   eval_poly_classical, sample_sl2_tuple, specialize_relation_check)
from planarskein.expr import parse_poly
from planarskein.presentation import build_catalog, theta_eval

tup = sample_sl2_tuple(seed=1, n=6)
for i, m in enumerate(tup.mats, 1):
    print(f"x{i} = [[{m.a}, {m.b}], [{m.c}, {m.d}]]")

print()
for name, (_, arity) in IDENTITIES.items():
    ok = all(check_classical_identity(name, sample_sl2_tuple(s, arity)) for s in range(50))
    print(f"{name:18s} holds on 50 tuples: {ok}")

typeI = build_catalog(5, ["TYPEI_OV1_1", "TYPEI_OV1_2", "TYPEI_OV1_3"])
print(f"\n{len(typeI)} type I instances vanish at q = 1:",
      all(specialize_relation_check(r, tup) for r in typeI))

p = parse_poly("s13*s24*s12 + t2*s234")
print("\nskein image at v = -1 :", eval_element_classical(theta_eval(p, 4), tup))
print("direct evaluation    :", eval_poly_classical(p, tup, -1))
