"""The relative-projective subfunctor, quasi-invertibles, phantoms and the
composition on Ext^n modulo that subfunctor.

``P(M, N)`` collects the degree-n classes that arise by pulling back through
a module of finite relative projective dimension (equivalently pushing out
from one).  The hot-path membership test is the kernel of the connecting map
along the canonical cover sequence of N; the factoring characterization is
kept alongside as a redundant oracle.  On the quotient the composition
``beta . gamma := ((beta a) b^{-1}) f`` is computed literally: a right unit
factorization of gamma, a co-angled pair gluing its unit to the canonical
one, division by the quasi-invertible leg, and a final pull-back.
"""

from __future__ import annotations

import numpy as np

from .exactlin import Matrix, kernel_basis, quotient_reps, rank, solve
from .algmod import (
    Conflation, Module, ModuleMap, cokernel_module, column_space_basis,
    direct_sum, identity_map, zero_module, zero_map,
)
from .frobenius import CertificationError, FrobeniusContext, UnitConflation
from .resolve import (
    ExtElement, class_from_sequence, connecting_map, pull_back, push_out,
)

__all__ = [
    "PModSpace", "CoangledPair", "AngledPair", "RingTable",
    "p_subspace", "p_member", "p_member_factoring",
    "is_quasi_invertible", "is_phantom", "is_phantom_right",
    "ruf", "luf", "coangled", "angled", "divide_by_sigma",
    "compose_mod_p", "ext_ring", "phi",
]


class PModSpace:
    """Ext^n(M, N) / P with deterministic quotient coordinates.

    The subspace P is the kernel of the connecting map along the canonical
    cover sequence syz N -> Q -> N (in degree 0 this is exactly the maps
    factoring through a projective).
    """

    def __init__(self, ctx: FrobeniusContext, M: Module, N: Module):
        self.ctx = ctx
        self.M = M
        self.N = N
        self.n = ctx.n
        resolver = ctx.resolver
        if N.dim == 0:
            self.ext = resolver.ext(M, N, self.n)
            self.p_basis = Matrix.zeros(ctx.algebra.field, self.ext.dim, 0)
        else:
            cover_seq = resolver.resolution(N).truncation(1)
            conn = connecting_map(resolver, cover_seq, M, self.n, covariant=True)
            self.ext = conn.source
            self.p_basis = column_space_basis(conn.kernel())
            self.connecting = conn
        self.reps_p, self.proj_p = quotient_reps(self.ext.dim, self.p_basis)

    @property
    def dim(self) -> int:
        return self.reps_p.cols

    def qcoords(self, elt: ExtElement) -> Matrix:
        return self.proj_p * self.ext.coords(elt)

    def from_coset_coords(self, coords: Matrix) -> Matrix:
        return self.proj_p * coords

    def representative(self, q: Matrix) -> ExtElement:
        return self.ext.element_from_coords(self.reps_p * q)

    def basis_representatives(self):
        F = self.ctx.algebra.field
        out = []
        for j in range(self.dim):
            e = Matrix.zeros(F, self.dim, 1)
            e.a[j, 0] = F.of(1)
            out.append(self.representative(e))
        return out

    def zero(self) -> Matrix:
        return Matrix.zeros(self.ctx.algebra.field, self.dim, 1)


def p_subspace(ctx: FrobeniusContext, M: Module, N: Module) -> PModSpace:
    key = ("pmod", id(M), id(N))
    return _ctx_cache(ctx, key, lambda: PModSpace(ctx, M, N), keep=(M, N))


def _ctx_cache(ctx, key, builder, keep=()):
    store = getattr(ctx, "_phantom_cache", None)
    if store is None:
        store = {}
        ctx._phantom_cache = store
    hit = store.get(key)
    if hit is None:
        hit = (keep, builder())
        store[key] = hit
    return hit[1]


def p_member(ctx: FrobeniusContext, gamma: ExtElement) -> bool:
    """Connecting-map membership test for the subfunctor (the hot path)."""
    if gamma.n != ctx.n:
        raise ValueError(f"P lives in degree {ctx.n}, element has degree {gamma.n}")
    return p_subspace(ctx, gamma.M, gamma.N).qcoords(gamma).is_zero()


def p_member_factoring(ctx: FrobeniusContext, gamma: ExtElement) -> bool:
    """Redundant oracle for the subfunctor membership.

    Degree 0: a direct factoring solve through the projective cover of the
    target.  Degree n >= 1: every member factors through the fixed envelope
    inflation of the source into a relative projective, so membership is a
    rank test against the span of pull-backs along that inflation.
    """
    resolver = ctx.resolver
    M, N = gamma.M, gamma.N
    if ctx.n == 0:
        cover = resolver.resolution(N).cover(0)
        lifted = resolver.solve_post(M, cover.source, cover, gamma.cocycle)
        return lifted is not None
    e = ctx.envelope(M)
    space = resolver.ext(M, N, ctx.n)
    eta_space = resolver.ext(e.target, N, ctx.n)
    cols = [space.coords(pull_back(eta, e)).a
            for eta in eta_space.basis_elements()]
    F = ctx.algebra.field
    span = Matrix(F, np.hstack(cols)) if cols else Matrix.zeros(F, space.dim, 0)
    target = space.coords(gamma)
    return rank(span) == rank(span.hstack(target))


# ----------------------------------------------------------------------
# Quasi-invertibles and phantoms
# ----------------------------------------------------------------------

def is_quasi_invertible(ctx: FrobeniusContext, f: ModuleMap) -> bool:
    """Cokernel criterion: f acts invertibly on Ext^{n+1} exactly when the
    cokernel of [f, e]^t into N (+) I(M) is relative projective."""
    M, N = f.source, f.target
    e = ctx.envelope(M)
    S, injs, _ = direct_sum([N, e.target])
    h = (injs[0] * f) + (injs[1] * e)
    L, _ = cokernel_module(h)
    return ctx.is_n_projective(L)


def is_phantom(ctx: FrobeniusContext, f: ModuleMap) -> bool:
    """Left annihilation of Ext^n/P: one canonical unit pull-back suffices."""
    N = f.target
    if ctx.n == 0:
        gamma = ExtElement(ctx.resolver, f.source, N, 0, f, _skip_checks=True)
        return p_member(ctx, gamma)
    delta = ctx.unit_down(N, ctx.n)
    return p_member(ctx, pull_back(delta.element, f))


def is_phantom_right(ctx: FrobeniusContext, f: ModuleMap) -> bool:
    """Right annihilation, through the dual route: push the canonical
    co-unit of the source out along f (degree 0 uses the factoring solve)."""
    X = f.source
    if ctx.n == 0:
        gamma = ExtElement(ctx.resolver, X, f.target, 0, f, _skip_checks=True)
        return p_member_factoring(ctx, gamma)
    delta = ctx.unit_up(X, ctx.n)
    return p_member(ctx, push_out(f, delta.element))


# ----------------------------------------------------------------------
# Unit factorizations
# ----------------------------------------------------------------------

def ruf(ctx: FrobeniusContext, gamma: ExtElement, variant: str = "canonical"):
    """Right unit factorization gamma = delta . f.

    delta is the truncated injective coresolution of the left end (or its
    padded variant), f solves the pull-back equation in the canonical coset
    coordinates; the factorization is verified before returning.
    """
    if gamma.n < 1:
        raise ValueError("unit factorizations need degree >= 1")
    X = gamma.N
    k = gamma.n
    delta = _ruf_unit(ctx, X, k, variant)
    E = delta.conflation.right
    mat, homs = _pullback_matrix(ctx, delta, gamma.M)
    space = ctx.resolver.ext(gamma.M, X, k)
    x = solve(mat, space.coords(gamma))
    if x is None:
        raise CertificationError("right unit factorization solve failed")
    f = homs.combine(x)
    if not pull_back(delta.element, f).same_class(gamma):
        raise CertificationError("right unit factorization did not verify")
    return delta, f


def _ruf_unit(ctx: FrobeniusContext, X: Module, k: int, variant: str):
    if variant == "canonical":
        return ctx.unit_up(X, k)
    if variant != "padded":
        raise ValueError(f"unknown RUF variant {variant!r}")
    key = ("ruf_pad", id(X), k)

    def build():
        from .resolve import direct_sum_conflation
        base = ctx.unit_up(X, k).conflation
        pad = _trivial_unit(ctx, ctx.envelope(X).target, k)
        c = direct_sum_conflation(base, pad)
        for mid in c.middles:
            if not ctx.is_n_projective(mid):
                raise CertificationError("padded unit middle fails certification")
        elt = class_from_sequence(ctx.resolver, c)
        return UnitConflation(c, elt, "up", X)

    return _ctx_cache(ctx, key, build, keep=(X,))


def _trivial_unit(ctx: FrobeniusContext, Q: Module, k: int) -> Conflation:
    """0 -> Q -> Q -> 0 -> ... -> 0, a length-k conflation with unit middles."""
    Z = zero_module(ctx.algebra)
    mods = [Z, Q, Q] + [Z] * (k - 1)
    maps = [zero_map(Z, Q), identity_map(Q)]
    if k >= 2:
        maps.append(zero_map(Q, Z))
        for _ in range(k - 2):
            maps.append(zero_map(Z, Z))
    return Conflation(mods, maps)


def _pullback_matrix(ctx, delta: UnitConflation, M: Module):
    """Matrix of f |-> coords(delta . f) over the hom basis Hom(M, right end)."""
    key = ("ruf_mat", id(delta), id(M))

    def build():
        E = delta.conflation.right
        X = delta.conflation.left
        homs = ctx.resolver.hom_basis(M, E)
        space = ctx.resolver.ext(M, X, delta.conflation.length)
        F = ctx.algebra.field
        cols = [space.coords(pull_back(delta.element, h)).a for h in homs.maps]
        mat = Matrix(F, np.hstack(cols)) if cols else Matrix.zeros(F, space.dim, 0)
        return mat, homs

    return _ctx_cache(ctx, key, build, keep=(delta, M))


def luf(ctx: FrobeniusContext, gamma: ExtElement):
    """Left unit factorization gamma = g . delta with delta the truncated
    minimal resolution of the right end; exact on the nose."""
    if gamma.n < 1:
        raise ValueError("unit factorizations need degree >= 1")
    M = gamma.M
    k = gamma.n
    delta = ctx.unit_down(M, k)
    res = ctx.resolver.resolution(M)
    g = ctx.resolver.solve_pre(res.syzygy(k), gamma.N, res.cover(k),
                               gamma.cocycle)
    if g is None:
        raise CertificationError("left unit factorization failed")
    if not push_out(g, delta.element).same_class(gamma):
        raise CertificationError("left unit factorization did not verify")
    return g, delta


# ----------------------------------------------------------------------
# Angled and co-angled pairs
# ----------------------------------------------------------------------

class CoangledPair:
    """delta1 <-a1- delta3 -a2-> delta2 for two unit conflations in U^k(X):
    the deflations a_i are co-induced by the identity and quasi-invertible,
    and delta3 = delta_i . a_i as extension classes (verified)."""

    def __init__(self, delta3: UnitConflation, a1: ModuleMap, a2: ModuleMap):
        self.delta = delta3
        self.a1 = a1
        self.a2 = a2


class AngledPair:
    """delta1 -a1-> delta3 <-a2- delta2 for unit conflations in U_k(N):
    inflations out of the syzygies with a_i . delta_i = delta3 (verified)."""

    def __init__(self, delta3: UnitConflation, a1: ModuleMap, a2: ModuleMap):
        self.delta = delta3
        self.a1 = a1
        self.a2 = a2


def coangled(ctx: FrobeniusContext, d1: UnitConflation, d2: UnitConflation,
             certify: bool = True) -> CoangledPair:
    """The explicit gluing of two co-unit conflations on the same object.

    Direct-sum the middle terms step by step, pad each gluing stage with the
    injective envelope of the stage cokernel, and take the projection
    deflations; both legs are certified quasi-invertible and the class
    identities delta3 = delta_i a_i are checked.
    """
    c1, c2 = d1.conflation, d2.conflation
    if c1.left is not c2.left and c1.left != c2.left:
        raise ValueError("co-angled pair needs a common left end")
    if c1.length != c2.length:
        raise ValueError("co-angled pair needs equal lengths")
    if d1 is d2:
        # the pair [delta . 1, delta . 1] glues a conflation with itself
        one = identity_map(c1.right)
        return CoangledPair(d1, one, one)
    key = ("coangled", id(d1), id(d2))
    return _ctx_cache(ctx, key, lambda: _coangled_build(ctx, d1, d2, certify),
                      keep=(d1, d2))


def _stage_data(c: Conflation):
    """Per-stage quotients (L_i^t, q_i^t, j_i^t) of an exact k-fold conflation."""
    k = c.length
    stages = []
    prev_incl = c.maps[0]
    for t in range(1, k + 1):
        Pt = c.modules[t]
        if t < k:
            L, q = cokernel_module(prev_incl)
            nxt = c.maps[t]  # P_t -> P_{t+1}
            j = _factor_right(nxt, q)
            stages.append((L, q, j))
            prev_incl = j
        else:
            stages.append((c.modules[-1], c.maps[-1], None))
    return stages


def _factor_right(f: ModuleMap, q: ModuleMap) -> ModuleMap:
    """j with j . q = f, for a surjection q whose kernel f kills."""
    X = solve(q.matrix.transpose(), f.matrix.transpose())
    if X is None:
        raise RuntimeError("factorization through cokernel failed")
    return ModuleMap(q.target, f.target, X.transpose(), _skip_checks=True)


def _coangled_build(ctx, d1, d2, certify):
    c1, c2 = d1.conflation, d2.conflation
    k = c1.length
    X = c1.left
    F = ctx.algebra.field
    s1 = _stage_data(c1)
    s2 = _stage_data(c2)

    mods = [X]
    maps = []
    # current inflation legs into the glued middle
    cur = None
    b1 = b2 = None
    for t in range(k):
        P1t, P2t = c1.modules[t + 1], c2.modules[t + 1]
        if t == 0:
            Q, injs, projs = direct_sum([P1t, P2t])
            j = (injs[0] * c1.maps[0]) + (injs[1] * c2.maps[0])
            legs = (projs[0], projs[1])
        else:
            pad = ctx.envelope(cur)
            Q, injs, projs = direct_sum([P1t, P2t, pad.target])
            j = (injs[0] * (s1[t - 1][2] * b1)) + (injs[1] * (s2[t - 1][2] * b2)) \
                + (injs[2] * pad)
            legs = (projs[0], projs[1])
        mods.append(Q)
        maps.append(j if t == 0 else j * qprev)
        if t < k - 1:
            L, q = cokernel_module(j)
            b1 = _induced_on_cokernel(q, s1[t][1] * legs[0], j)
            b2 = _induced_on_cokernel(q, s2[t][1] * legs[1], j)
            cur = L
            qprev = q
        else:
            L, q = cokernel_module(j)
            a1 = _induced_on_cokernel(q, s1[t][1] * legs[0], j)
            a2 = _induced_on_cokernel(q, s2[t][1] * legs[1], j)
            mods.append(L)
            maps.append(q)
    conf = Conflation(mods, maps)
    elt = class_from_sequence(ctx.resolver, conf)
    delta3 = UnitConflation(conf, elt, "up", X)
    if certify:
        for mid in conf.middles:
            if not ctx.is_n_projective(mid):
                raise CertificationError("glued middle term fails certification")
        for a, d in ((a1, d1), (a2, d2)):
            if not a.is_surjective():
                raise CertificationError("co-angled leg is not a deflation")
            if not is_quasi_invertible(ctx, a):
                raise CertificationError("co-angled leg is not quasi-invertible")
            if not pull_back(d.element, a).same_class(elt):
                raise CertificationError("co-angled class identity failed")
    return CoangledPair(delta3, a1, a2)


def _induced_on_cokernel(q: ModuleMap, rhs: ModuleMap, killed_by: ModuleMap) -> ModuleMap:
    """The map L -> T with (L -> T) . q = rhs, for q a cokernel projection."""
    X = solve(q.matrix.transpose(), rhs.matrix.transpose())
    if X is None:
        raise RuntimeError("cokernel does not receive the induced map")
    return ModuleMap(q.target, rhs.target, X.transpose(), _skip_checks=True)


def angled(ctx: FrobeniusContext, d1: UnitConflation, d2: UnitConflation,
           certify: bool = True) -> AngledPair:
    """Dual gluing for unit conflations ending at the same object, computed
    by running the co-angled construction over the opposite algebra."""
    c1, c2 = d1.conflation, d2.conflation
    if c1.right is not c2.right and c1.right != c2.right:
        raise ValueError("angled pair needs a common right end")
    if d1 is d2:
        one = identity_map(c1.left)
        return AngledPair(d1, one, one)
    key = ("angled", id(d1), id(d2))
    return _ctx_cache(ctx, key, lambda: _angled_build(ctx, d1, d2, certify),
                      keep=(d1, d2))


def _angled_build(ctx, d1, d2, certify):
    op = ctx.opposite()
    D1 = _dual_unit(ctx, d1)
    D2 = _dual_unit(ctx, d2)
    pair = coangled(op, D1, D2, certify=certify)
    conf = _dual_conflation_r(ctx.resolver, pair.delta.conflation)
    elt = class_from_sequence(ctx.resolver, conf)
    delta3 = UnitConflation(conf, elt, "down", conf.right)
    a1 = _dual_map_r(ctx.resolver, pair.a1)
    a2 = _dual_map_r(ctx.resolver, pair.a2)
    if certify:
        for mid in conf.middles:
            if not ctx.is_n_projective(mid):
                raise CertificationError("glued middle term fails certification")
        for a, d in ((a1, d1), (a2, d2)):
            if not a.is_injective():
                raise CertificationError("angled leg is not an inflation")
            if not is_quasi_invertible(ctx, a):
                raise CertificationError("angled leg is not quasi-invertible")
            if not push_out(a, d.element).same_class(elt):
                raise CertificationError("angled class identity failed")
    return AngledPair(delta3, a1, a2)


def _dual_unit(ctx, d: UnitConflation) -> UnitConflation:
    key = ("dualunit", id(d))

    def build():
        op = ctx.opposite()
        conf = _dual_conflation_r(ctx.resolver, d.conflation)
        elt = class_from_sequence(op.resolver, conf)
        return UnitConflation(conf, elt, "up" if d.direction == "down" else "down",
                              conf.left if d.direction == "down" else conf.right)

    return _ctx_cache(ctx, key, build, keep=(d,))


def _dual_conflation_r(resolver, c: Conflation) -> Conflation:
    mods = [resolver.dual(m) for m in reversed(c.modules)]
    maps = []
    for f, src, dst in zip(reversed(c.maps), mods, mods[1:]):
        maps.append(ModuleMap(src, dst, f.matrix.transpose(), _skip_checks=True))
    return Conflation(mods, maps, _skip_checks=True)


def _dual_map_r(resolver, f: ModuleMap) -> ModuleMap:
    return ModuleMap(resolver.dual(f.target), resolver.dual(f.source),
                     f.matrix.transpose(), _skip_checks=True)


# ----------------------------------------------------------------------
# Division by quasi-invertibles and composition
# ----------------------------------------------------------------------

def divide_by_sigma(ctx: FrobeniusContext, b: ModuleMap, side: str,
                    target: Module, coords: Matrix, source_end: Module) -> Matrix:
    """Solve for the coset with (result . b) resp. (b . result) equal to the
    given class modulo P; unique because quasi-invertibles act invertibly.

    For side "right": b: V -> W, result in Ext^n(W, target)/P with
    pull-back along b landing on ``coords`` (coordinates of Ext^n(V, target)/P).
    For side "left": b: V -> W, result in Ext^n(source_end, V)/P with
    push-out along b landing on ``coords``.
    """
    key = ("divmat", id(b), side, id(target), id(source_end))

    def build():
        F = ctx.algebra.field
        if side == "right":
            src_space = p_subspace(ctx, b.target, target)
            dst_space = p_subspace(ctx, b.source, target)
            cols = [dst_space.qcoords(pull_back(g, b)).a
                    for g in src_space.basis_representatives()]
        elif side == "left":
            src_space = p_subspace(ctx, source_end, b.source)
            dst_space = p_subspace(ctx, source_end, b.target)
            cols = [dst_space.qcoords(push_out(b, g)).a
                    for g in src_space.basis_representatives()]
        else:
            raise ValueError("side must be 'left' or 'right'")
        mat = Matrix(F, np.hstack(cols)) if cols else \
            Matrix.zeros(F, dst_space.dim, 0)
        if kernel_basis(mat).cols != 0:
            raise CertificationError(
                "quasi-invertible does not act invertibly on Ext^n/P")
        return mat, src_space

    mat, src_space = _ctx_cache(ctx, key, build, keep=(b, target, source_end))
    x = solve(mat, coords)
    if x is None:
        raise CertificationError(
            "division by a quasi-invertible failed: no preimage class")
    return x


def compose_mod_p(ctx: FrobeniusContext, N: Module, K: Module,
                  beta: ExtElement, gamma: ExtElement,
                  ruf_variant: str = "canonical") -> Matrix:
    """The composition class of beta in Ext^n(N, syz^n K) with gamma in
    Ext^n(M, syz^n N), as quotient coordinates in Ext^n(M, syz^n K)/P."""
    n = ctx.n
    M = gamma.M
    OmK = ctx.syz(K)
    out_space = p_subspace(ctx, M, OmK)
    if n == 0:
        composed = ExtElement(ctx.resolver, M, K, 0,
                              beta.cocycle * gamma.cocycle, _skip_checks=True)
        return out_space.qcoords(composed)
    OmN = ctx.syz(N)
    if gamma.N is not OmN and gamma.N != OmN:
        raise ValueError("gamma is not anchored at the canonical syzygy of N")
    if beta.M is not N and beta.M != N:
        raise ValueError("beta does not start at N")
    if beta.N is not OmK and beta.N != OmK:
        raise ValueError("beta is not anchored at the canonical syzygy of K")
    delta, f = ruf(ctx, gamma, variant=ruf_variant)
    dN = ctx.unit_down(N, n)
    pair = coangled(ctx, dN, delta)
    a1, b1 = pair.a1, pair.a2
    beta_a1 = pull_back(beta, a1)
    mid_space = p_subspace(ctx, a1.source, OmK)
    divided = divide_by_sigma(ctx, b1, "right", OmK,
                              mid_space.qcoords(beta_a1), b1.source)
    E_space = p_subspace(ctx, b1.target, OmK)
    beta_prime = E_space.representative(divided)
    return out_space.qcoords(pull_back(beta_prime, f))


# ----------------------------------------------------------------------
# The endomorphism-side ring and the morphism phi
# ----------------------------------------------------------------------

class RingTable:
    """(Ext^n(M, syz^n M)/P, +, .): multiplication table on the coset basis."""

    def __init__(self, ctx: FrobeniusContext, M: Module,
                 ruf_variant: str = "canonical"):
        self.ctx = ctx
        self.M = M
        self.space = p_subspace(ctx, M, ctx.syz(M))
        self.table = {}
        reps = self.space.basis_representatives()
        for i, bi in enumerate(reps):
            for j, bj in enumerate(reps):
                self.table[(i, j)] = compose_mod_p(ctx, M, M, bi, bj,
                                                   ruf_variant=ruf_variant)
        self.one = self.space.qcoords(ctx.unit_element(M))

    @property
    def dim(self):
        return self.space.dim

    def multiply(self, x: Matrix, y: Matrix) -> Matrix:
        F = self.ctx.algebra.field
        out = self.space.zero()
        for i in range(self.dim):
            xi = x[i, 0]
            if xi == F.of(0):
                continue
            for j in range(self.dim):
                yj = y[j, 0]
                if yj == F.of(0):
                    continue
                out = out + self.table[(i, j)].scale(xi).scale(yj)
        return out

    def is_invertible(self, x: Matrix) -> bool:
        """Two-sided inverse through the regular representation."""
        F = self.ctx.algebra.field
        d = self.dim
        left = Matrix.zeros(F, d, d)
        right = Matrix.zeros(F, d, d)
        for j in range(d):
            e = Matrix.zeros(F, d, 1)
            e.a[j, 0] = F.of(1)
            left.a[:, j] = self.multiply(x, e).a[:, 0]
            right.a[:, j] = self.multiply(e, x).a[:, 0]
        li = solve(left, self.one)
        ri = solve(right, self.one)
        return li is not None and ri is not None and li == ri


def ext_ring(ctx: FrobeniusContext, M: Module,
             ruf_variant: str = "canonical") -> RingTable:
    key = ("ring", id(M), ruf_variant)
    return _ctx_cache(ctx, key, lambda: RingTable(ctx, M, ruf_variant),
                      keep=(M,))


def phi(ctx: FrobeniusContext, f: ModuleMap) -> Matrix:
    """The ring morphism End(M) -> Ext^n(M, syz^n M)/P: the coset of the
    canonical unit pulled back along f."""
    if f.source is not f.target and f.source != f.target:
        raise ValueError("phi needs an endomorphism")
    M = f.source
    space = p_subspace(ctx, M, ctx.syz(M))
    return space.qcoords(pull_back(ctx.unit_element(M), f))
