import pytest

from stablext.exactlin import GF, QQ
from stablext.algmod import (
    indecomposable_summands, is_isomorphic, projective_indecs, simples,
)
from stablext.fixtures import (
    dual_numbers, hereditary_a2, indecomposable_inventory, t2_dual_numbers,
    trunc_poly,
)
from stablext.frobenius import (
    FrobeniusContext, gorenstein_one_search, gorenstein_parameter, proj_dim,
)
from stablext.resolve import Resolver


@pytest.fixture(scope="module")
def dn_ctx():
    return FrobeniusContext(dual_numbers(GF(2)))


@pytest.fixture(scope="module")
def a2_ctx():
    return FrobeniusContext(hereditary_a2(QQ))


@pytest.fixture(scope="module")
def t2_ctx():
    return FrobeniusContext(t2_dual_numbers(GF(2)))


# -- dimensions -----------------------------------------------------------

def test_projective_has_pd_zero(dn_ctx):
    P = projective_indecs(dn_ctx.algebra)[0]
    assert dn_ctx.proj_dim(P) == 0


def test_hereditary_pd_at_most_one(a2_ctx):
    for M in indecomposable_inventory(a2_ctx):
        pd = a2_ctx.proj_dim(M)
        assert pd is not None and pd <= 1


def test_simple_infinite_pd(dn_ctx):
    S = simples(dn_ctx.algebra)[0]
    assert dn_ctx.proj_dim(S, bound=6) is None


# -- gorenstein parameter ---------------------------------------------------

def test_selfinjective_parameter_zero():
    # the classical case: 0-Frobenius = usual Frobenius = self-injective
    assert gorenstein_parameter(dual_numbers(GF(2))) == 0
    assert gorenstein_parameter(trunc_poly(3, GF(3))) == 0


def test_hereditary_parameter_one(a2_ctx):
    assert a2_ctx.n == 1


def test_t2_parameter_one(t2_ctx):
    assert t2_ctx.n == 1


def test_t2_infinite_global_dimension(t2_ctx):
    pds = [t2_ctx.proj_dim(S, bound=8) for S in simples(t2_ctx.algebra)]
    assert None in pds


# -- relative projectivity ---------------------------------------------------

def test_projectives_are_n_projective(dn_ctx, a2_ctx, t2_ctx):
    for ctx in (dn_ctx, a2_ctx, t2_ctx):
        for P in projective_indecs(ctx.algebra):
            assert ctx.is_n_projective(P)


def test_simple_not_projective_dual_numbers(dn_ctx):
    S = simples(dn_ctx.algebra)[0]
    assert not dn_ctx.is_n_projective(S)


def test_hereditary_everything_1_projective(a2_ctx):
    for M in indecomposable_inventory(a2_ctx):
        assert a2_ctx.is_n_projective(M)


def test_nproj_equals_ninj(dn_ctx, a2_ctx, t2_ctx):
    # pd <= n iff injective dimension <= n, on every inventory module
    for ctx in (dn_ctx, a2_ctx, t2_ctx):
        for M in indecomposable_inventory(ctx):
            pd = ctx.proj_dim(M)
            idim = ctx.inj_dim(M)
            left = pd is not None and pd <= ctx.n
            right = idim is not None and idim <= ctx.n
            assert left == right, (ctx.algebra.name, M.name, pd, idim)


# -- unit conflations ----------------------------------------------------------

def test_unit_down_projective_splits(dn_ctx):
    P = projective_indecs(dn_ctx.algebra)[0]
    u = dn_ctx.unit_down(P, 1)
    assert u.left.dim == 0    # minimal resolution of a projective


def test_unit_down_simple(dn_ctx):
    S = simples(dn_ctx.algebra)[0]
    u = dn_ctx.unit_down(S, 1)
    assert [m.dim for m in u.conflation.modules] == [1, 2, 1]
    assert is_isomorphic(u.left, S)


def test_unit_up_simple(dn_ctx):
    S = simples(dn_ctx.algebra)[0]
    u = dn_ctx.unit_up(S, 1)
    assert [m.dim for m in u.conflation.modules] == [1, 2, 1]
    assert is_isomorphic(u.right, S)


def test_units_exist_through_degree(dn_ctx, t2_ctx):
    for ctx in (dn_ctx, t2_ctx):
        for M in indecomposable_inventory(ctx):
            for k in range(1, ctx.n + 3):
                u = ctx.unit_down(M, k)
                assert u.conflation.length == k
                v = ctx.unit_up(M, k)
                assert v.conflation.length == k


# -- Gorenstein projectives ------------------------------------------------------

def test_projectives_are_gproj(t2_ctx):
    for P in projective_indecs(t2_ctx.algebra):
        assert t2_ctx.is_gproj(P)


def test_selfinjective_everything_gproj(dn_ctx):
    for M in indecomposable_inventory(dn_ctx):
        assert dn_ctx.is_gproj(M)


def test_hereditary_gproj_are_projective(a2_ctx):
    for M in indecomposable_inventory(a2_ctx):
        assert a2_ctx.is_gproj(M) == (a2_ctx.proj_dim(M) == 0)


def test_t2_has_nonprojective_gproj(t2_ctx):
    inv = indecomposable_inventory(t2_ctx)
    extra = [M for M in inv if t2_ctx.is_gproj(M) and t2_ctx.proj_dim(M) != 0]
    assert extra, "expected non-projective Gorenstein projectives over T2"


def test_gproj_closure_under_extensions(t2_ctx):
    # first syzygies are Gorenstein projective over a parameter-1 algebra
    for S in simples(t2_ctx.algebra):
        Om = t2_ctx.resolver.syzygy(S, 1)
        assert t2_ctx.is_gproj(Om)


def test_search_returns_t2():
    A = gorenstein_one_search()
    assert A.dim == 6
    assert gorenstein_parameter(A) == 1


# -- inventories -------------------------------------------------------------

def test_inventory_dual_numbers(dn_ctx):
    inv = indecomposable_inventory(dn_ctx)
    assert sorted(m.dim for m in inv) == [1, 2]


def test_inventory_trunc_poly():
    ctx = FrobeniusContext(trunc_poly(3, GF(3)))
    inv = indecomposable_inventory(ctx)
    assert sorted(m.dim for m in inv) == [1, 2, 3]


def test_inventory_t2(t2_ctx):
    inv = indecomposable_inventory(t2_ctx)
    assert len(inv) >= 5
    dims = sorted(m.dim for m in inv)
    assert dims[0] == 1


def test_indecomposable_summands_of_sum(dn_ctx):
    from stablext.algmod import direct_sum
    A = dn_ctx.algebra
    S = simples(A)[0]
    P = projective_indecs(A)[0]
    M, _, _ = direct_sum([S, P])
    pieces = indecomposable_summands(M)
    assert sorted(p.dim for p in pieces) == [1, 2]


def test_gproj_extension_closure_instances(t2_ctx):
    # extensions of G-projectives by G-projectives stay G-projective
    ctx = t2_ctx
    inv = [M for M in indecomposable_inventory(ctx) if ctx.is_gproj(M)]
    from stablext.resolve import sequence_from_element
    for A_ in inv:
        for C in inv:
            sp = ctx.resolver.ext(C, A_, 1)
            for elt in sp.basis_elements():
                B = elt.sequence().modules[1]
                assert ctx.is_gproj(B), (A_.name, C.name)


def test_gproj_projective_extension_instances(t2_ctx):
    # in Q -> M -> N with Q projective and N G-projective, M is G-projective
    ctx = t2_ctx
    gproj = [M for M in indecomposable_inventory(ctx) if ctx.is_gproj(M)]
    for Q in projective_indecs(ctx.algebra):
        for N in gproj:
            sp = ctx.resolver.ext(N, Q, 1)
            elts = sp.basis_elements() or []
            from stablext.resolve import ExtElement
            from stablext.algmod import zero_map
            res = ctx.resolver.resolution(N)
            split = ExtElement(ctx.resolver, N, Q, 1,
                               zero_map(res.term(1), Q))
            for elt in [split] + elts:
                M = elt.sequence().modules[1]
                assert ctx.is_gproj(M)
