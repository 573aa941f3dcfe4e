"""Decomposition pipeline: the p-power map, cyclic splitting, group bases
and full recovery."""

import numpy as np
import pytest

from pgroupalg.algebra import AlgebraContext, group_algebra_subalgebra, power_space
from pgroupalg.catalog import catalog_by_name
from pgroupalg.decompose import (_group_closure_vectors,
                                 certify_indecomposable,
                                 find_group_basis_commutative,
                                 group_from_unit_vectors, homocyclic_split,
                                 lambda_map, recover_decomposition,
                                 split_cyclic)
from pgroupalg.fplin import span
from pgroupalg.groups import (RetractionError, abelian_invariants,
                              catalog_build, is_internal_direct_product,
                              subgroup_to_pgroup)
from pgroupalg.lemmas import verify_tensor_factorization


def coordinate_factorization(a_name, g0_name):
    A = catalog_by_name(a_name)
    G0 = catalog_by_name(g0_name)
    G = catalog_build("direct_product", A, G0)
    ctx = AlgebraContext(G)
    B = group_algebra_subalgebra(ctx, [a * G0.order for a in range(A.order)])
    C = group_algebra_subalgebra(ctx, list(range(G0.order)))
    return A, G0, ctx, B, C


def test_lambda_map_c2():
    L = lambda_map(catalog_by_name("C2"), 1)
    # s = 1: the map is the identity on a 1-dimensional domain
    assert L.domain.dim == 1
    assert L.kernel.dim == 0


def test_lambda_map_c2xc4():
    G = catalog_by_name("C2xC4")
    ctx = AlgebraContext(G)
    L = lambda_map(G, 2)
    assert L.domain.dim == 2
    assert L.kernel.dim == 1
    # an order-4 element stays outside the kernel: its p-th power of g-1
    # survives in degree p
    b = next(g for g in range(8) if G.element_order(g) == 4)
    rep = L.domain.project(ctx.group_minus_one(b))
    assert not L.kernel.contains_vector(L.domain.lift(rep))
    # some involution t has t - 1 in the kernel (the C2 coordinate dies)
    kern_hits = [g for g in range(1, 8) if G.element_order(g) == 2
                 and L.kernel.contains_vector(
                     L.domain.lift(L.domain.project(ctx.group_minus_one(g))))]
    assert kern_hits


def test_lambda_map_degenerate_on_d8():
    # Omega_2(Z(D8))D8' = Z(D8) = D8', so the domain collapses to zero
    L = lambda_map(catalog_by_name("D8"), 2)
    assert L.domain.dim == 0
    assert L.map.rank() == 0


def test_split_cyclic():
    G = catalog_by_name("C2xC4")
    h = next(g for g in range(8) if G.element_order(g) == 4)
    H, K = split_cyclic(G, h)
    assert H.order == 4 and K.order == 2
    assert is_internal_direct_product(G, H, K)


def test_split_cyclic_rejects_non_factor():
    C4 = catalog_by_name("C4")
    h = next(g for g in range(4) if C4.element_order(g) == 2)
    with pytest.raises(RetractionError):
        split_cyclic(C4, h)


def test_homocyclic_split_partial():
    # inside C2xC4 with s = 2: V spanned by (b-1) + I^2 for an order-4
    # element b splits off exactly the C4 part
    G = catalog_by_name("C2xC4")
    ctx = AlgebraContext(G)
    L = lambda_map(G, 2)
    I2 = power_space(ctx, ctx.augmentation_ideal(), 2)
    b = next(g for g in range(8) if G.element_order(g) == 4)
    V = span(2, 8, [ctx.group_minus_one(b)]) + I2
    H, K = homocyclic_split(G, 2, V)
    assert abelian_invariants(subgroup_to_pgroup(H)[0]) == (4,)
    assert abelian_invariants(subgroup_to_pgroup(K)[0]) == (2,)
    assert is_internal_direct_product(G, H, K)


def test_homocyclic_split_full():
    # the full domain for C4xC4 peels the whole group as exponent-4
    # homocyclic, leaving a trivial complement
    G = catalog_by_name("C4xC4")
    L = lambda_map(G, 2)
    V = L.domain.section_space() + L.domain.U
    H, K = homocyclic_split(G, 2, V)
    assert H.order == 16 and K.order == 1
    assert abelian_invariants(subgroup_to_pgroup(H)[0]) == (4, 4)


def test_find_group_basis_commutative():
    _, _, ctx, B, _ = coordinate_factorization("C2xC4", "D8")
    gens = find_group_basis_commutative(B)
    orders = [_order_of(ctx, u) for u in gens]
    assert max(orders) == 4
    closed = _group_closure_vectors(ctx, gens, B.dim + 1)
    assert closed is not None and len(closed) == B.dim == 8
    Gb = group_from_unit_vectors(ctx, closed)
    assert abelian_invariants(Gb) == (4, 2)


def _order_of(ctx, u):
    k, acc = 1, np.asarray(u) % ctx.group.p
    while not np.array_equal(acc, ctx.one):
        acc = ctx.multiply(acc, u)
        k += 1
    return k


def test_group_basis_spans_subalgebra():
    _, _, ctx, B, _ = coordinate_factorization("C4", "Q8")
    gens = find_group_basis_commutative(B)
    closed = _group_closure_vectors(ctx, gens, B.dim + 1)
    S = span(ctx.group.p, ctx.dim, closed)
    assert S == B.space


RECOVERY_PAIRS = [("C2", "C2"), ("C2", "D8"), ("C4", "Q8"),
                  ("C2xC2", "C4"), ("C2xC4", "D8"), ("C8", "C8"),
                  ("C2xC2", "Q8")]


@pytest.mark.parametrize("a_name,g0_name", RECOVERY_PAIRS)
def test_recover_decomposition(a_name, g0_name):
    A, G0, ctx, B, C = coordinate_factorization(a_name, g0_name)
    fact = verify_tensor_factorization(ctx, B, C)
    rep = recover_decomposition(fact, seed=0)
    assert rep.verified
    assert rep.b_invariants == abelian_invariants(A)
    assert rep.c_side.order == G0.order
    assert is_internal_direct_product(ctx.group, rep.b_side, rep.c_side)
    Cp, _ = subgroup_to_pgroup(rep.c_side)
    assert Cp.is_abelian() == G0.is_abelian()


def test_recover_is_deterministic():
    _, _, ctx, B, C = coordinate_factorization("C2xC4", "D8")
    fact = verify_tensor_factorization(ctx, B, C)
    r1 = recover_decomposition(fact, seed=0)
    r2 = recover_decomposition(fact, seed=0)
    assert r1.to_json() == r2.to_json()


def test_certificates_catalog():
    expected = {
        "D8": "three_generated",
        "Q8": "three_generated",
        "SD16": "three_generated",
        "M16": "three_generated",
        "D16": "three_generated",
        "Q16": "three_generated",
        "He3": "three_generated",
    }
    for name, kind in expected.items():
        cert = certify_indecomposable(catalog_by_name(name))
        assert cert.kind == kind, name
        assert cert.directly_indecomposable


def test_certificates_refused():
    # abelian groups sit outside the certificate's scope
    cert = certify_indecomposable(catalog_by_name("C8"))
    assert cert.kind == "none"
    # directly decomposable groups cannot be certified
    cert = certify_indecomposable(catalog_by_name("C2xD8"))
    assert cert.kind == "none"
    assert not cert.directly_indecomposable
