"""Ext spaces and the two faces of an extension class.

A degree-n class is stored as a cocycle on the minimal projective
resolution; an explicit n-fold exact sequence is derived on demand, and a
comparison-theorem lift recovers the cocycle from any exact sequence.  The
pair of directions is kept deliberately redundant: sequence-level pull-back,
push-out and Baer sum act as an independent oracle for the cocycle
arithmetic.
"""

from stablext import (
    GF, Resolver, baer_sum, baer_sum_sequence, class_from_sequence,
    connecting_map, pull_back, pullback_sequence, simples,
)
from stablext.fixtures import dual_numbers, trunc_poly
from stablext.algmod import identity_map, quotient_module
from stablext.exactlin import Matrix

A = dual_numbers(GF(2))
R = Resolver(A, bound=10)
S = simples(A)[0]

# The minimal resolution of the simple module is periodic: every syzygy is S.
res = R.resolution(S)
res.extend(4)
print("terms of the minimal resolution of S:",
      [res.term(k).dim for k in range(5)])
print("syzygies:", [res.syzygy(k).dim for k in range(1, 5)])

# Ext^n(S, S) is one-dimensional in every positive degree.
print("dim Ext^n(S,S) for n = 1..4:",
      [R.ext(S, S, n).dim for n in range(1, 5)])

# The generator of Ext^1(S, S), as a sequence: the non-split extension
# S -> A -> S whose middle is the regular module.
gamma = R.ext(S, S, 1).basis_elements()[0]
seq = gamma.sequence()
print("sequence form of the generator:",
      " -> ".join(str(m.dim) for m in seq.modules))
back = class_from_sequence(R, seq)
print("round trip reproduces the class:", back.same_class(gamma))

# Baer sum: over F_2 the generator is 2-torsion.
print("gamma + gamma is a coboundary:", baer_sum(gamma, gamma).is_coboundary())
two = baer_sum_sequence(seq, seq)
print("the sequence-level sum agrees:",
      class_from_sequence(R, two).same_class(baer_sum(gamma, gamma)))

# Pull-back along the identity is the identity on classes, at both levels.
print("pull-back oracle:",
      pull_back(gamma, identity_map(S)).same_class(
          class_from_sequence(R, pullback_sequence(seq, identity_map(S)))))

# Connecting maps of the long exact sequence: along the cover sequence
# syz S -> A -> S they are isomorphisms in every degree (the projective
# middle kills both neighbors).
c = res.truncation(1)
for n in (1, 2):
    cm = connecting_map(R, c, S, n)
    print(f"connecting Ext^{n}(S,S) -> Ext^{n+1}(S, syz S): "
          f"rank {cm.rank()} of {cm.source.dim} -> {cm.target.dim}")
print("ok")
