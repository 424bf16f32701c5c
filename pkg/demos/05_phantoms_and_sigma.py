"""Phantoms, quasi-invertibles, and the ring on stable endomorphisms.

A morphism is quasi-invertible when it acts invertibly on Ext^{n+1}
(equivalently on Ext^n modulo the subfunctor P); it is a phantom when it
annihilates that quotient.  Both tests reduce to single deterministic
computations -- a cokernel dimension and one unit pull-back -- and both are
cross-checked against brute force in the test suite.
"""

import random

from stablext import (
    FrobeniusContext, ext_ring, gorenstein_one_search, is_phantom,
    is_phantom_right, is_quasi_invertible, p_member, p_member_factoring,
    p_subspace, phi, projective_indecs, simples,
)
from stablext.algmod import identity_map, zero_map
from stablext.fixtures import indecomposable_inventory
from stablext.resolve import ExtElement
from stablext.suites import _rand_hom

ctx = FrobeniusContext(gorenstein_one_search())
S1, S2 = simples(ctx.algebra)
inv = indecomposable_inventory(ctx)

# The subfunctor quotient: dimensions of Ext^1/P across the inventory.
print("dim Ext^1(M, syz N)/P over the inventory:")
for M in inv:
    print(f"  {M.name:>14s}:",
          [p_subspace(ctx, M, ctx.syz(N)).dim for N in inv])

# Membership has two independent tests: the connecting-map kernel (hot
# path) and the factoring characterization (oracle).  They agree.
OmS1 = ctx.syz(S1)
for gamma in ctx.resolver.ext(S1, OmS1, 1).basis_elements():
    print("P-membership, two routes:",
          p_member(ctx, gamma), p_member_factoring(ctx, gamma))

# Identity maps are quasi-invertible; factoring through a projective is
# phantom; and the left/right phantom tests always agree.
rng = random.Random(0)
P = projective_indecs(ctx.algebra)[0]
through = _rand_hom(ctx, rng, P, S2) * _rand_hom(ctx, rng, S1, P)
print("id quasi-invertible:", is_quasi_invertible(ctx, identity_map(S1)))
print("factor-through-projective is phantom (left and right):",
      is_phantom(ctx, through), is_phantom_right(ctx, through))

# The stable endomorphism ring of the simple with infinite projective
# dimension, with the ring morphism from honest endomorphisms.
ring = ext_ring(ctx, S1)
print("stable endomorphism ring of S1: dim", ring.dim)
print("phi(identity) is the unit:", phi(ctx, identity_map(S1)) == ring.one)
print("phi(zero) vanishes:", phi(ctx, zero_map(S1, S1)).is_zero())
for _ in range(4):
    f = _rand_hom(ctx, rng, S1, S1)
    tag = ("unit" if is_quasi_invertible(ctx, f)
           else "phantom" if is_phantom(ctx, f) else "other")
    print(f"  random endomorphism -> {tag};"
          f" phi invertible: {ring.is_invertible(phi(ctx, f))}")
print("ok")
