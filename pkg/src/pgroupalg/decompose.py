"""Constructive decomposition machinery.

Implements the power map between filtration quotients whose kernel locates
homocyclic direct factors, the cyclic/homocyclic splitting steps, recovery
of a group direct decomposition from a tensor factorization with a
commutative factor, and tensor-indecomposability certificates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import (AlgebraContext, AugmentedSubalgebra,
                      frattini_quotient, ideal_generated,
                      normal_subgroup_ideal, power_space, product_space)
from .fplin import FpSubspace, LinearMap, QuotientSpace, complement_within, span
from .groups import (ORACLE_CAP, PGroup, RetractionError, Subgroup,
                     abelian_invariants, characteristic_subgroup,
                     direct_factor_oracle, is_internal_direct_product,
                     retraction_complement, subgroup_to_pgroup,
                     trivial_subgroup)
from .lemmas import (TensorFactorizationInput, VerificationError,
                     cyclic_factor_test, verify_tensor_factorization)


@dataclass
class LambdaData:
    """The p^{s-1}-power map between filtration quotients."""

    s: int
    domain: QuotientSpace
    codomain: QuotientSpace
    map: LinearMap
    kernel: FpSubspace  # inside the span of the domain section


def _omega_center_derived(G: PGroup, s: int) -> Subgroup:
    """Omega_s(Z(G)) * G'."""
    center = characteristic_subgroup(G, "center")
    q = G.p ** s
    gens = {g for g in center.elements if G.power(g, q) == 0}
    gens |= set(characteristic_subgroup(G, "derived").elements)
    return Subgroup.generated(G, gens)


def _agemo_derived(G: PGroup, s: int) -> Subgroup:
    gens = set(characteristic_subgroup(G, "agemo", s).elements)
    gens |= set(characteristic_subgroup(G, "derived").elements)
    return Subgroup.generated(G, gens)


def lambda_map(G: PGroup, s: int, rng_seed: int = 0) -> LambdaData:
    """Build the map z + I(G)^2 -> z^{p^{s-1}} between the two filtration
    quotients, with a well-definedness re-check on shifted representatives."""
    p = G.p
    if s < 1 or p ** s > G.exponent():
        raise ValueError(f"lambda_map requires 1 <= p^s <= exp(G), got s={s}")
    ctx = AlgebraContext(G)
    I = ctx.augmentation_ideal()
    I2 = power_space(ctx, I, 2)
    q = p ** (s - 1)
    W_dom = normal_subgroup_ideal(ctx, _omega_center_derived(G, s)) + I2
    domain = QuotientSpace(W_dom, I2)
    mho_ideal = normal_subgroup_ideal(ctx, _agemo_derived(G, s))
    W_cod = power_space(ctx, I, q) + mho_ideal
    U_cod = power_space(ctx, I, q + 1) + mho_ideal
    codomain = QuotientSpace(W_cod, U_cod)
    rng = np.random.default_rng(rng_seed)
    rows = []
    for z in domain.section:
        img = codomain.project(ctx.power(z, q))
        # re-check on one random I(G)^2-shift per basis vector
        if I2.dim:
            shift = (rng.integers(0, p, size=I2.dim) @ I2.basis) % p
            img2 = codomain.project(ctx.power((z + shift) % p, q))
            if not np.array_equal(img, img2):
                raise VerificationError(
                    "lambda-well-defined",
                    "power map value changed under an I(G)^2 shift")
        rows.append(img)
    matrix = np.array(rows, dtype=np.int64).reshape(domain.dim, codomain.dim)
    lam = LinearMap(p, domain.section, matrix, codomain.dim)
    return LambdaData(s, domain, codomain, lam, lam.kernel())


def split_cyclic(G: PGroup, h: int) -> tuple[Subgroup, Subgroup]:
    """G = <h> x G_0 via a retraction, plus the algebra-level splitting check
    F_pG = J + F_pG_0 with J the ideal generated by e_h - 1."""
    H = Subgroup.generated(G, (h,))
    G0 = retraction_complement(G, h)
    if not is_internal_direct_product(G, H, G0):
        raise VerificationError("split-cyclic", "not an internal direct product")
    ctx = AlgebraContext(G)
    J = ideal_generated(ctx, span(G.p, G.order, [ctx.group_minus_one(h)]))
    span_G0 = span(G.p, G.order, [ctx.basis_vector(k) for k in G0.elements])
    if J.dim != G.order - G0.order or J.intersect(span_G0).dim != 0:
        raise VerificationError(
            "split-cyclic-algebra", "F_pG != J + F_pG_0 as a direct sum")
    return H, G0


def _coset_candidates(ctx: AlgebraContext, I2: FpSubspace, target) -> list[int]:
    """Group elements g with e_g - 1 congruent to target modulo I(G)^2."""
    G = ctx.group
    return [g for g in range(G.order)
            if I2.contains_vector((ctx.group_minus_one(g) - target) % ctx.p)]


def _find_split_element(G: PGroup, ctx: AlgebraContext, I2: FpSubspace,
                        target, s: int) -> tuple[int, Subgroup, Subgroup]:
    """An order-p^s central element h with e_h - 1 = target mod I(G)^2 that
    splits off; candidates scanned in ascending element order."""
    T = G.table
    q = G.p ** s
    last_error: Exception | None = None
    for g in _coset_candidates(ctx, I2, target):
        if g == 0 or G.element_order(g) != q:
            continue
        if not np.array_equal(T[g], T[:, g]):
            continue
        try:
            H, G0 = split_cyclic(G, g)
            return g, H, G0
        except (RetractionError, VerificationError) as exc:
            last_error = exc
    raise VerificationError(
        "order-p^s-lift",
        f"no central order-{q} element in the required Frattini coset splits"
        + (f" (last: {last_error})" if last_error else ""))


def homocyclic_split(G: PGroup, s: int, V: FpSubspace) -> tuple[Subgroup, Subgroup]:
    """Given V with V/I(G)^2 + ker Lambda a direct sum filling the domain,
    produce G = H x K with H homocyclic of exponent p^s and K without
    cyclic factors of order p^s."""
    ctx = AlgebraContext(G)
    I = ctx.augmentation_ideal()
    I2 = power_space(ctx, I, 2)
    lam = lambda_map(G, s)
    v_rows = []
    for row in V.basis:
        rep = lam.domain.lift(lam.domain.project(row))
        if rep.any():
            v_rows.append(rep)
    V_sec = FpSubspace(G.p, G.order, np.array(v_rows) if v_rows else None)
    section_space = lam.domain.section_space()
    if not (V_sec.intersect(lam.kernel).dim == 0
            and V_sec.sum(lam.kernel) == section_space):
        raise VerificationError(
            "homocyclic-precondition",
            "V/I(G)^2 is not a direct complement of ker Lambda")
    h_elems: list[int] = []
    cur_G, cur_embed = G, list(range(G.order))
    cur_V = V_sec
    while cur_V.dim:
        cur_ctx = AlgebraContext(cur_G)
        cur_I2 = power_space(cur_ctx, cur_ctx.augmentation_ideal(), 2)
        target = cur_V.basis[0]
        h, H, G0 = _find_split_element(cur_G, cur_ctx, cur_I2, target, s)
        h_elems.append(cur_embed[h])
        # push the remaining generators of V into G_0
        rest_elems = []
        for row in cur_V.basis[1:]:
            cands = _coset_candidates(cur_ctx, cur_I2, row)
            g = next(c for c in cands if c != 0)
            # write g = h^a * k with k in G_0
            k = None
            for a in range(cur_G.element_order(h)):
                cand = cur_G.mul(cur_G.inv(cur_G.power(h, a)), g)
                if G0.contains(cand):
                    k = cand
                    break
            if k is None:
                raise VerificationError("homocyclic-projection",
                                        "element does not project into G_0")
            rest_elems.append(k)
        G0p, g0_elems = subgroup_to_pgroup(G0)
        pos = {e: i for i, e in enumerate(g0_elems)}
        ctx0 = AlgebraContext(G0p)
        rows = [ctx0.group_minus_one(pos[k]) for k in rest_elems]
        cur_V = FpSubspace(G.p, G0p.order, np.array(rows) if rows else None)
        cur_embed = [cur_embed[e] for e in g0_elems]
        cur_G = G0p
    H = Subgroup.generated(G, h_elems) if h_elems else trivial_subgroup(G)
    K = Subgroup(G, tuple(cur_embed))
    if not is_internal_direct_product(G, H, K):
        raise VerificationError("homocyclic-split", "H x K is not G")
    invs = abelian_invariants(H)
    if any(o != G.p ** s for o in invs):
        raise VerificationError("homocyclic-split",
                                f"H is not homocyclic of exponent p^{s}: {invs}")
    if K.order > 1:
        Kp, _ = subgroup_to_pgroup(K)
        if cyclic_factor_test(Kp, s)[0]:
            raise VerificationError("homocyclic-split",
                                    "K still has a cyclic factor of order p^s")
    return H, K


def _unit_order(ctx: AlgebraContext, u) -> int:
    o, x = 1, np.asarray(u) % ctx.p
    one = ctx.one
    while not np.array_equal(x, one):
        x = ctx.multiply(x, u)
        o += 1
        if o > ctx.dim * ctx.p:
            raise VerificationError("unit-order", "element is not a unit of p-power order")
    return o


def _group_closure_vectors(ctx: AlgebraContext, units, limit: int) -> list[np.ndarray] | None:
    """Multiplicative closure of a set of commuting units; None past limit."""
    elems = {ctx.one.tobytes(): ctx.one}
    frontier = [ctx.one]
    for u in units:
        frontier.append(np.asarray(u) % ctx.p)
    while frontier:
        x = frontier.pop()
        if x.tobytes() not in elems:
            elems[x.tobytes()] = x
        for u in units:
            y = ctx.multiply(x, u)
            if y.tobytes() not in elems:
                if len(elems) >= limit:
                    return None
                elems[y.tobytes()] = y
                frontier.append(y)
    return [elems[k] for k in sorted(elems)]


def group_from_unit_vectors(ctx: AlgebraContext, vectors) -> PGroup:
    """Cayley table of a finite multiplicative group of algebra elements."""
    vecs = sorted((np.asarray(v) % ctx.p for v in vectors),
                  key=lambda v: v.tobytes())
    one = ctx.one
    vecs = [one] + [v for v in vecs if not np.array_equal(v, one)]
    idx = {v.tobytes(): i for i, v in enumerate(vecs)}
    n = len(vecs)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(vecs):
        for j, b in enumerate(vecs):
            table[i, j] = idx[ctx.multiply(a, b).tobytes()]
    return PGroup(ctx.p, table, name=f"units{n}")


def find_group_basis_commutative(B: AugmentedSubalgebra,
                                 cap: int = 2 ** 22,
                                 seed: int = 0) -> list[np.ndarray]:
    """Unit elements generating a group basis of a commutative augmented
    subalgebra: backtracking over units of 1 + I(B), highest order first."""
    ctx = B.ctx
    p = ctx.p
    if not B.is_commutative():
        raise VerificationError("group-basis", "B is not commutative")
    if B.dim == 1:
        return []
    IB = B.aug_ideal
    total = p ** IB.dim
    one = ctx.one
    if total <= cap:
        units = []
        coeffs = np.zeros(IB.dim, dtype=np.int64)
        for n in range(total):
            x = n
            for k in range(IB.dim):
                coeffs[k] = x % p
                x //= p
            units.append((one + coeffs @ IB.basis) % p)
    else:
        rng = np.random.default_rng(seed)
        units = [(one + rng.integers(0, p, size=IB.dim) @ IB.basis) % p
                 for _ in range(4096)]
    units = [u for u in units if not np.array_equal(u, one)]
    order_of = {u.tobytes(): _unit_order(ctx, u) for u in units}
    units.sort(key=lambda u: (-order_of[u.tobytes()], u.tobytes()))
    I2B = product_space(ctx, IB, IB)
    target = B.dim

    def diff_subalgebra(base: FpSubspace, diff) -> FpSubspace:
        acc = base + span(p, ctx.dim, [diff])
        while True:
            rows = [ctx.multiply(diff, r) for r in acc.basis]
            new = acc + FpSubspace(p, ctx.dim, np.array(rows))
            if new.dim == acc.dim:
                return new
            acc = new

    def dfs(chosen: list, S: FpSubspace) -> list | None:
        grp = _group_closure_vectors(ctx, chosen, target + 1)
        if grp is None:
            return None  # overshoot
        if len(grp) == target:
            spanned = FpSubspace(p, ctx.dim, np.array(grp))
            if spanned == B.space:
                return chosen
            return None
        for u in units:
            d = (u - one) % p
            if S.contains_vector(d):
                continue
            result = dfs(chosen + [u], diff_subalgebra(S, d))
            if result is not None:
                return result
        return None

    result = dfs([], I2B)
    if result is None:
        raise VerificationError("group-basis",
                                "no group basis found among the sampled units")
    return result


@dataclass
class DecompositionReport:
    """Verified internal decomposition G = B-side x C-side with evidence."""

    b_side: Subgroup
    c_side: Subgroup
    verified: bool
    b_invariants: tuple
    steps: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "b_side": [int(x) for x in self.b_side.elements],
            "c_side": [int(x) for x in self.c_side.elements],
            "verified": self.verified,
            "b_invariants": [int(x) for x in self.b_invariants],
            "steps": self.steps,
        }


def recover_decomposition(fact: TensorFactorizationInput,
                          seed: int = 0) -> DecompositionReport:
    """Recover G = B-side x C-side from a verified tensor factorization with
    commutative B, peeling one maximal-order cyclic factor per level."""
    if not fact.verified:
        raise VerificationError("unverified", "factorization was not verified")
    if not fact.B.is_commutative():
        raise VerificationError("B-commutative", "B must be commutative")
    G = fact.ctx.group
    p = G.p
    # invariants of the group basis of the original B, for the final check
    units0 = find_group_basis_commutative(fact.B, seed=seed)
    if units0:
        closure0 = _group_closure_vectors(fact.ctx, units0, fact.B.dim + 1)
        b_group_invs = abelian_invariants(
            group_from_unit_vectors(fact.ctx, closure0))
    else:
        b_group_invs = ()

    hs: list[int] = []
    steps: list[dict] = []
    cur_fact = fact
    cur_embed = list(range(G.order))
    depth = 0
    while cur_fact.B.dim > 1:
        ctx = cur_fact.ctx
        cur_G = ctx.group
        units = find_group_basis_commutative(cur_fact.B, seed=seed)
        b = units[0]  # highest multiplicative order p^s
        ps = _unit_order(ctx, b)
        s = round(math.log(ps, p))
        b_minus_1 = (b - ctx.one) % p
        I = ctx.augmentation_ideal()
        q = p ** (s - 1)
        # Jennings non-membership: (b-1)^{p^{s-1}} stays outside
        # I(G)^{p^{s-1}+1} + I(mho_s(G)G')kG
        bad = power_space(ctx, I, q + 1) \
            + normal_subgroup_ideal(ctx, _agemo_derived(cur_G, s))
        if bad.contains_vector(ctx.power(b_minus_1, q)):
            raise VerificationError(
                "jennings-nonmembership",
                "(b-1)^{p^{s-1}} fell into the excluded ideal")
        # the complement V from the proof (evidence; h-search uses b's class)
        lam = lambda_map(cur_G, s)
        rep_b = lam.domain.lift(lam.domain.project(b_minus_1))
        if lam.kernel.contains_vector(rep_b):
            raise VerificationError(
                "kernel-exclusion", "class of b-1 lies in ker Lambda")
        complement_within(lam.kernel, lam.domain.section_space(),
                          span(p, cur_G.order, [rep_b]))
        I2 = power_space(ctx, I, 2)
        h, H, G0 = _find_split_element(cur_G, ctx, I2, b_minus_1, s)
        hs.append(cur_embed[h])
        steps.append({"depth": depth, "s": s, "h": cur_embed[h],
                      "group_order": cur_G.order})
        # project both factors along J = (b-1)F_pG onto F_pG_0 and recurse
        J = ideal_generated(ctx, span(p, cur_G.order, [b_minus_1]))
        span_G0 = span(p, cur_G.order,
                       [ctx.basis_vector(k) for k in G0.elements])
        if J.dim != cur_G.order - G0.order or J.intersect(span_G0).dim != 0:
            raise VerificationError(
                "theorem-splitting", "F_pG != (b-1)F_pG + F_pG_0")
        qs = QuotientSpace(ctx.full_space(), J, section=span_G0)
        G0p, g0_elems = subgroup_to_pgroup(G0)
        ctx0 = AlgebraContext(G0p)
        B_rows = np.array([qs.project(v) for v in cur_fact.B.space.basis])
        C_rows = np.array([qs.project(v) for v in cur_fact.C.space.basis])
        B0 = AugmentedSubalgebra.from_space(
            ctx0, FpSubspace(p, G0p.order, B_rows))
        C0 = AugmentedSubalgebra.from_space(
            ctx0, FpSubspace(p, G0p.order, C_rows))
        cur_fact = verify_tensor_factorization(ctx0, B0, C0)
        cur_embed = [cur_embed[e] for e in g0_elems]
        depth += 1

    b_side = Subgroup.generated(G, hs) if hs else trivial_subgroup(G)
    c_side = Subgroup(G, tuple(cur_embed))
    verified = is_internal_direct_product(G, b_side, c_side)
    if not verified:
        raise VerificationError("final-direct-product",
                                "B-side x C-side is not G")
    invs = abelian_invariants(b_side)
    if invs != b_group_invs:
        raise VerificationError(
            "b-side-invariants",
            f"B-side invariants {invs} != group basis invariants {b_group_invs}")
    return DecompositionReport(b_side, c_side, True, invs, steps)


@dataclass(frozen=True)
class Certificate:
    """Tensor-indecomposability certificate for a nonabelian p-group."""

    kind: str  # three_generated | cyclic_derived | none
    directly_indecomposable: bool
    min_generators: int
    derived_cyclic: bool
    note: str = ""

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "directly_indecomposable": self.directly_indecomposable,
            "min_generators": self.min_generators,
            "derived_cyclic": self.derived_cyclic,
            "note": self.note,
        }


def certify_indecomposable(G: PGroup, oracle_cap: int = ORACLE_CAP) -> Certificate:
    """Certify that F_pG admits no nontrivial tensor factorization.

    Issued only for nonabelian, directly indecomposable G with d(G) <= 3 or
    cyclic derived subgroup; the commutative case is settled separately and
    does not receive a certificate here.
    """
    pairs = direct_factor_oracle(G, cap=oracle_cap)
    indec = not pairs
    ctx = AlgebraContext(G)
    d = frattini_quotient(ctx).dim
    frattini = characteristic_subgroup(G, "frattini")
    if G.p ** d * frattini.order != G.order:
        raise VerificationError(
            "frattini-rank", "dim I/I^2 disagrees with |G/Phi(G)|")
    derived = characteristic_subgroup(G, "derived")
    Dp, _ = subgroup_to_pgroup(derived)
    derived_cyclic = Dp.order == 1 or Dp.exponent() == Dp.order
    if G.is_abelian():
        return Certificate("none", indec, d, derived_cyclic,
                           note="abelian: outside certificate scope")
    if indec and d <= 3:
        return Certificate("three_generated", True, d, derived_cyclic)
    if indec and derived_cyclic:
        return Certificate("cyclic_derived", True, d, derived_cyclic)
    return Certificate("none", indec, d, derived_cyclic)
