"""The circle action: closed tuple formulas versus the folding expansion.

Run with ``python tutorials/02_circle_action.py``.
"""

from fractions import Fraction

from pyramid_fock import CircleInterval, FockVector, Pyramid, apply_E_circle, apply_F_circle, expand_r_F
from pyramid_fock.coeff import V_MINUS_VINV
from pyramid_fock.fock_circle import apply_K_circle, apply_K_circle_power, enumerate_F_tuples

p = Pyramid.from_text("-1/2:1:0:2:1/2:1:1")
J = CircleInterval(Fraction(1, 4), Fraction(1, 2))  # the arc [1/4, 3/4)
print("p =", p.to_text(), " J = arc of length", J.length, "starting at", J.start)

# F_J on the circle sums over tuples of lifts of pieces of J.
for t in enumerate_F_tuples(J, p):
    print("  tuple", t)

closed = apply_F_circle(J, FockVector.basis(p))
folded = expand_r_F(J, p)
print("\nclosed formula :", closed)
print("folding        :", folded)
print("agree:", closed == folded)

# [E_J, F_J] = (K_J - K_J^-1) / (v - v^-1)
w = FockVector.basis(p)
lhs = apply_E_circle(J, apply_F_circle(J, w)) - apply_F_circle(J, apply_E_circle(J, w))
rhs = apply_K_circle(J, w) - apply_K_circle_power(J, -1, w)
print("\ncommutator relation holds:", lhs.scale(V_MINUS_VINV) == rhs)

# K of the full circle is central and acts by v.
print("K_full |p> =", apply_K_circle(CircleInterval.full(), w))
