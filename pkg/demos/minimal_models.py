"""Minimal models by homotopy transfer: the differential dies on homology
and the bracket transfers, with higher corrections remembering homotopies.

The 4-dimensional example below has [v,v] exact, so the transferred binary
bracket vanishes, but the arity-3 correction p[h[v,v],v] (summed over
unshuffles) survives: the model is genuinely an L-infinity structure.
"""

from fractions import Fraction as Q

from mclie.linalg import GradedElement
from mclie.dgla import dgla_from_table, heisenberg_dgla, sphere_dgla
from mclie.cehar import minimal_model

print("zero differential: the model is the algebra itself")
model = minimal_model(heisenberg_dgla())
print("  generators per degree:", model.homology_dims(),
      " higher corrections:", model.has_higher_corrections())

print("\nacyclic input: the zero model")
print("  sphere ->", minimal_model(sphere_dgla()).homology_dims())

x = GradedElement({(2, "x"): Q(1)})
z = GradedElement({(4, "z"): Q(1)})
g = dgla_from_table({1: ["v"], 2: ["x"], 3: ["y"], 4: ["z"]},
                    {("v", "v"): x, ("v", "y"): z}, {"y": x})
model = minimal_model(g, 3)
print("\nnon-formal 4-dimensional complex: [v,v] = x = d(y), [v,y] = z")
print("  homology generators:", model.homology_dims())
print("  transferred binary bracket:", model.l2 or "0")
print("  arity-3 correction on (v,v,v):", model.l3[((1, 0), (1, 0), (1, 0))])
print("  linear part of the differential is zero:",
      model.linear_part_is_zero())
