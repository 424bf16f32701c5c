"""Exact linear algebra: the substrate everything else stands on.

Every computation in stablext reduces to four primitives over Q or F_p:
reduced row echelon form, kernel bases, particular solutions, and quotient
coordinates.  All of them are exact and deterministic, so the bases they
produce are reproducible across runs.
"""

from fractions import Fraction

from stablext import GF, QQ, Matrix, kernel_basis, quotient_reps, rank, rref, solve

# Rational matrices carry Fractions, never floats.
A = Matrix.from_rows(QQ, [[1, 2, 3], [2, 4, 6], [1, 1, 1]])
R, pivots = rref(A)
print("rref of a rank-2 rational matrix:")
print(" ", R.a.tolist())
print("  pivot columns:", pivots)

# Solving is exact: x = 1/2 comes out as the Fraction it is.
x = solve(Matrix.from_rows(QQ, [[2]]), Matrix.column(QQ, [1]))
print("solution of 2x = 1:", x[0, 0], type(x[0, 0]).__name__)
assert x[0, 0] == Fraction(1, 2)

# Prime fields are int64 residues; p may be any prime below 2^31.
F7 = GF(7)
B = Matrix.from_rows(F7, [[1, 3, 2], [2, 6, 4]])
K = kernel_basis(B)
print("kernel basis over F_7 (columns):")
print(" ", K.a.tolist())
assert (B * K).is_zero()
assert rank(B) + K.cols == B.cols

# Quotient spaces hand back coset representatives and the projection that
# computes coordinates; this is how every "/P" and "/image" quotient in the
# package is realized.
sub = Matrix.from_rows(GF(2), [[1], [1]])     # the diagonal line in F_2^2
reps, proj = quotient_reps(2, sub)
v1 = Matrix.column(GF(2), [1, 0])
v2 = Matrix.column(GF(2), [0, 1])
print("coset coordinates of (1,0) and (0,1) modulo the diagonal:",
      (proj * v1).a.ravel().tolist(), (proj * v2).a.ravel().tolist())
assert proj * v1 == proj * v2   # same coset
print("ok")
