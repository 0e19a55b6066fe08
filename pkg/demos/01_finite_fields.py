"""Exact arithmetic in small finite fields and echelon-form subspaces."""

from modiso import echelon_basis, make_field, subspace_combine

# GF(4) with the standard modulus x^2 + x + 1; the generator w satisfies
# w^2 = w + 1
F4 = make_field(2, 2)
w = F4.gen
print("field:", F4, "modulus coefficients (ascending):", F4.modulus)
print("w * w =", w * w, "   w^2 + w + 1 =", w * w + w + 1)
print("inverse of w:", w.inverse(), "  check:", w * w.inverse())

# every element, once
print("elements of GF(4):", F4.elements())

# subspaces are reduced-row-echelon bases; combine gives sums and intersections
F3 = make_field(3, 1)
P1 = echelon_basis([F3.vec(v) for v in [(1, 0, 0), (0, 1, 0)]], F3)
P2 = echelon_basis([F3.vec(v) for v in [(0, 1, 1), (1, 0, 1)]], F3)
line = subspace_combine(P1, P2, "intersection")
print("\ntwo planes in GF(3)^3 intersect in dimension", line.dim)
print("a spanning vector of the line:", line.rows[0])

ok, residue = P1.contains(F3.vec((1, 1, 1)))
print("(1,1,1) in the first plane?", ok, " residue:", residue)
