"""Exact linear algebra on finite grids.

Run with ``python tutorials/03_highest_weight_and_cyclicity.py`` (a few seconds).
"""

from pyramid_fock.pyramid import Pyramid
from pyramid_fock.verify import cyclic_span, hw_scan

# Vectors killed by every circle E_J: on each grid only the vacuum survives.
for N, s in ((1, 4), (2, 3), (3, 3)):
    res = hw_scan(N, s)
    print(f"grid 1/{N}, size <= {s}: {res.basis_size} basis vectors, kernel {[str(v) for v in res.vectors]}")

# |1_[0,1)> is not reached from the vacuum by F-monomials over (1/N)-arcs.
unit = Pyramid.from_text("0:1:1")
for N in (2, 3):
    res = cyclic_span(N, unit)
    print(f"N={N}: span of {res.monomials} monomial images has rank {res.span_dim} "
          f"in a piece of dimension {res.piece_dim}; target in span: {res.in_span}")
