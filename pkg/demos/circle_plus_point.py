"""The free dgla on a (degree 0) and x (degree -1) with dx = -1/2 [x,x]
models the disjoint union of a circle and a point.

Its degree -1 slice has the basis e_0 = x, e_{k+1} = [a, e_k]; the
differentials of the e_k follow from the Leibniz rule alone, and the
exponential of a moves e_0 along its gauge orbit.  The only MC vertices
supported in the truncation window are 0 and x.
"""

from fractions import Fraction as Q

from mclie.dgla import f_xa_dgla, gauge_act
from mclie.mc import mc_vertices, pi0_moduli

m = 5
g = f_xa_dgla(m)
a = g.element("a")

print("degree -1 basis of the weight-%d truncation:" % m)
e = [g.element(lab) for lab in g.space.labels(-1)]
for lab in g.space.labels(-1):
    print("  ", lab)

print("\ndifferentials (computed, not postulated):")
for k in (2, 3):
    print("  d e_%d = %r" % (k, g.d(e[k])))

print("\nexp(a) e_0 within the truncation:")
orbit = gauge_act(g, a, e[0])
print("  ", orbit)
expected = e[0]
fact = Q(1)
for k in range(1, m):
    fact *= k
    expected = expected + e[k].scale(Q(1) / fact)
assert orbit == expected

_, result, vertices = mc_vertices(g, support=m)
print("\nMC vertices with support window %d (equations evaluated at the"
      " doubled window):" % m)
for v in sorted(vertices, key=repr):
    print("  ", v)
assert result.complete

moduli = pi0_moduli(g, support=m)
print("\npi_0 =", moduli.count(), "classes: the circle and the point")
