"""Pyramids, partitions and the interval action on the line.

Run with ``python tutorials/01_pyramids_and_partitions.py``.
"""

from fractions import Fraction

from pyramid_fock import FockVector, LineInterval, Partition, Pyramid, apply_E_line, apply_F_line
from pyramid_fock.cli import render
from pyramid_fock.pyramid import add_interval, heights, n_interval, nested_decomposition, partition_to_pyramid

# A partition becomes a pyramid by counting boxes on each content diagonal.
lam = Partition((5, 4, 4, 3, 1, 1))
p = partition_to_pyramid(lam)
print("pyramid of", lam, "=", p.to_text(), "size", p.size())
print(render(p, width=30))

# Rational pyramids are the same thing with arbitrary rational breakpoints.
base = Pyramid.from_text("-1:1:-7/10:2:2:1:5/2")
J = LineInterval(Fraction(-11, 5), Fraction(2, 5))
taller = add_interval(base, J)
print("\nadd", J, "->", taller.to_text())
print(render(taller, width=40))
print("heights of J on the base:", heights(base, J))
print("[-11/5, 5/2) addable?", add_interval(base, LineInterval(Fraction(-11, 5), Fraction(5, 2))) is not None)

# The level sets are strictly nested, and n_J(p) is +1 / -1 / 0.
print("\nlevel sets:", [str(I) for I in nested_decomposition(taller)])
print("n_J(taller) =", n_interval(taller, J))

# F_J adds an interval, E_J removes it, each with a signed half-integer power of v.
w = apply_F_line(J, FockVector.basis(base))
print("\nF_J |base> =", w)
print("E_J F_J |base> =", apply_E_line(J, w))
