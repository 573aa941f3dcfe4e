"""The modular group algebra F_pG and its ideal calculus.

Elements are coefficient vectors of length |G| indexed by group elements;
basis vectors multiply through the Cayley table.  All subspace-valued
operations return canonical RREF subspaces from :mod:`pgroupalg.fplin`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fplin import FpSubspace, QuotientSpace, nullspace
from .groups import (NotNormalError, PGroup, Subgroup,
                     characteristic_subgroup)


class AlgebraError(ValueError):
    pass


class EnumerationCapExceeded(AlgebraError):
    pass


class AlgebraContext:
    """F_pG for a fixed Cayley-table group.  Immutable and shareable."""

    def __init__(self, group: PGroup):
        self.group = group
        self.p = group.p
        self.dim = group.order
        self._aug_ideal: FpSubspace | None = None
        self._center: FpSubspace | None = None

    def basis_vector(self, g: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[g] = 1
        return v

    @property
    def one(self) -> np.ndarray:
        return self.basis_vector(0)

    def group_minus_one(self, g: int) -> np.ndarray:
        """The element e_g - 1."""
        v = np.zeros(self.dim, dtype=np.int64)
        v[g] += 1
        v[0] -= 1
        return v % self.p

    def multiply(self, u, v) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64) % self.p
        v = np.asarray(v, dtype=np.int64) % self.p
        if u.shape != (self.dim,) or v.shape != (self.dim,):
            raise AlgebraError("element dimension mismatch")
        out = np.zeros(self.dim, dtype=np.int64)
        np.add.at(out, self.group.table.ravel(), np.outer(u, v).ravel())
        return out % self.p

    def power(self, v, m: int) -> np.ndarray:
        if m < 0:
            raise AlgebraError("negative powers are not defined here")
        acc = self.one
        base = np.asarray(v, dtype=np.int64) % self.p
        while m:
            if m & 1:
                acc = self.multiply(acc, base)
            base = self.multiply(base, base)
            m >>= 1
        return acc

    def p_power(self, v, i: int) -> np.ndarray:
        return self.power(v, self.p ** i)

    def augmentation(self, v) -> int:
        return int(np.asarray(v, dtype=np.int64).sum() % self.p)

    def augmentation_ideal(self) -> FpSubspace:
        """span{e_g - 1 : g in G}; the Jacobson radical of F_pG."""
        if self._aug_ideal is None:
            rows = [self.group_minus_one(g) for g in range(1, self.dim)]
            self._aug_ideal = FpSubspace(self.p, self.dim, np.array(rows))
        return self._aug_ideal

    def full_space(self) -> FpSubspace:
        return FpSubspace.full(self.p, self.dim)

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        G = self.group
        seen: set[int] = set()
        classes = []
        for g in range(G.order):
            if g in seen:
                continue
            orbit = {G.conjugate(g, h) for h in range(G.order)}
            seen |= orbit
            classes.append(tuple(sorted(orbit)))
        return classes

    def center_subspace(self) -> FpSubspace:
        """Z(F_pG), spanned by conjugacy class sums."""
        if self._center is None:
            rows = []
            for cls in self.conjugacy_classes():
                v = np.zeros(self.dim, dtype=np.int64)
                v[list(cls)] = 1
                rows.append(v)
            self._center = FpSubspace(self.p, self.dim, np.array(rows))
        return self._center

    def central_ideal_part(self) -> FpSubspace:
        """Z(I(G)) = Z(F_pG) intersected with I(G)."""
        return self.center_subspace().intersect(self.augmentation_ideal())


def product_space(ctx: AlgebraContext, X: FpSubspace, Y: FpSubspace) -> FpSubspace:
    """Span of all pairwise products of basis elements (= span XY)."""
    rows = [ctx.multiply(x, y) for x in X.basis for y in Y.basis]
    if not rows:
        return FpSubspace.zero(ctx.p, ctx.dim)
    return FpSubspace(ctx.p, ctx.dim, np.array(rows))


def power_space(ctx: AlgebraContext, X: FpSubspace, m: int) -> FpSubspace:
    if m < 1:
        raise AlgebraError("power_space requires m >= 1")
    acc = X
    for _ in range(m - 1):
        acc = product_space(ctx, acc, X)
    return acc


def commutator_span(ctx: AlgebraContext, X: FpSubspace, Y: FpSubspace) -> FpSubspace:
    rows = [(ctx.multiply(x, y) - ctx.multiply(y, x)) % ctx.p
            for x in X.basis for y in Y.basis]
    if not rows:
        return FpSubspace.zero(ctx.p, ctx.dim)
    return FpSubspace(ctx.p, ctx.dim, np.array(rows))


def right_ideal(ctx: AlgebraContext, X: FpSubspace) -> FpSubspace:
    """XA: the right ideal generated by X (A is unital, so X itself included)."""
    rows = [ctx.multiply(x, ctx.basis_vector(g))
            for x in X.basis for g in range(ctx.dim)]
    if not rows:
        return FpSubspace.zero(ctx.p, ctx.dim)
    return FpSubspace(ctx.p, ctx.dim, np.array(rows))


def ideal_generated(ctx: AlgebraContext, X: FpSubspace) -> FpSubspace:
    """Smallest two-sided ideal containing X: closure under basis products."""
    acc = X
    while True:
        rows = list(acc.basis)
        for x in acc.basis:
            for g in range(ctx.dim):
                eg = ctx.basis_vector(g)
                rows.append(ctx.multiply(eg, x))
                rows.append(ctx.multiply(x, eg))
        new = FpSubspace(ctx.p, ctx.dim, np.array(rows))
        if new.dim == acc.dim:
            return new
        acc = new


def normal_subgroup_ideal(ctx: AlgebraContext, N: Subgroup) -> FpSubspace:
    """I(N)F_pG = kernel of F_pG -> F_p(G/N), built as span{(e_n - 1)e_g}."""
    if N.parent is not ctx.group:
        raise AlgebraError("subgroup does not belong to this context's group")
    if not N.is_normal():
        raise NotNormalError("normal_subgroup_ideal requires a normal subgroup")
    G = ctx.group
    rows = []
    for n in N.elements:
        if n == 0:
            continue
        for g in range(G.order):
            v = np.zeros(ctx.dim, dtype=np.int64)
            v[G.mul(n, g)] += 1
            v[g] -= 1
            rows.append(v % ctx.p)
    if not rows:
        return FpSubspace.zero(ctx.p, ctx.dim)
    out = FpSubspace(ctx.p, ctx.dim, np.array(rows))
    assert out.dim == G.order - G.order // N.order
    return out


class QuotientAlgebra:
    """F_pG / J for a verified two-sided ideal J, with a fixed section."""

    def __init__(self, ctx: AlgebraContext, J: FpSubspace):
        for x in J.basis:
            for g in range(ctx.dim):
                eg = ctx.basis_vector(g)
                if not (J.contains_vector(ctx.multiply(eg, x))
                        and J.contains_vector(ctx.multiply(x, eg))):
                    raise AlgebraError("J is not a two-sided ideal")
        self.ctx = ctx
        self.J = J
        self.qs = QuotientSpace(ctx.full_space(), J)
        self.dim = self.qs.dim

    def project(self, vec) -> np.ndarray:
        return self.qs.project(vec)

    def lift(self, coords) -> np.ndarray:
        return self.qs.lift(coords)

    def multiply(self, ca, cb) -> np.ndarray:
        return self.project(self.ctx.multiply(self.lift(ca), self.lift(cb)))

    @property
    def one(self) -> np.ndarray:
        return self.project(self.ctx.one)

    def is_commutative(self) -> bool:
        n = self.dim
        for i in range(n):
            a = np.zeros(n, dtype=np.int64)
            a[i] = 1
            for j in range(i + 1, n):
                b = np.zeros(n, dtype=np.int64)
                b[j] = 1
                if not np.array_equal(self.multiply(a, b), self.multiply(b, a)):
                    return False
        return True

    def radical_power_dims(self) -> list[int]:
        """Dims of the images of I(G)^m in the quotient, m = 1, 2, ... until 0."""
        I = self.ctx.augmentation_ideal()
        dims = []
        acc = I
        while True:
            img = FpSubspace(self.ctx.p, self.dim,
                             np.array([self.project(v) for v in acc.basis])
                             if acc.dim else None)
            dims.append(img.dim)
            if img.dim == 0:
                return dims
            acc = product_space(self.ctx, acc, I)


def quotient_algebra(ctx: AlgebraContext, J: FpSubspace) -> QuotientAlgebra:
    return QuotientAlgebra(ctx, J)


def omega_central(ctx: AlgebraContext, i: int) -> FpSubspace:
    """Omega_i(Z(I(G))): the subalgebra of central ideal elements generated by
    those with z^{p^i} = 0.

    Z(I(G)) is commutative, so z -> z^{p^i} is F_p-linear (Frobenius) and the
    nilpotent part is the kernel of that linear map; no enumeration needed.
    """
    Z = ctx.central_ideal_part()
    if Z.dim == 0:
        return Z
    M = np.array([ctx.p_power(z, i) for z in Z.basis])  # rows: images
    coeffs = nullspace(M.T, ctx.p)
    rows = (coeffs @ Z.basis) % ctx.p if coeffs.size else None
    acc = FpSubspace(ctx.p, ctx.dim, rows)
    # close into a subalgebra (already closed in theory; fixpoint is cheap)
    while True:
        prods = [ctx.multiply(a, b) for a in acc.basis for b in acc.basis]
        new = FpSubspace(ctx.p, ctx.dim,
                         np.array(list(acc.basis) + prods)) if prods else acc
        if new.dim == acc.dim:
            return new
        acc = new


def omega_central_enumerated(ctx: AlgebraContext, i: int,
                             cap: int = 2 ** 24) -> FpSubspace:
    """Brute-force Omega_i(Z(I(G))) by enumerating all central ideal elements.

    Independent cross-check for :func:`omega_central`; errors out past cap.
    """
    Z = ctx.central_ideal_part()
    total = ctx.p ** Z.dim
    if total > cap:
        raise EnumerationCapExceeded(
            f"{total} central elements exceed cap {cap}")
    q = ctx.p ** i
    hits = []
    coeffs = np.zeros(Z.dim, dtype=np.int64)
    for n in range(total):
        x = n
        for k in range(Z.dim):
            coeffs[k] = x % ctx.p
            x //= ctx.p
        z = (coeffs @ Z.basis) % ctx.p if Z.dim else np.zeros(ctx.dim, dtype=np.int64)
        if not ctx.power(z, q).any():
            hits.append(z.copy())
    acc = FpSubspace(ctx.p, ctx.dim, np.array(hits) if hits else None)
    while True:
        prods = [ctx.multiply(a, b) for a in acc.basis for b in acc.basis]
        new = FpSubspace(ctx.p, ctx.dim,
                         np.array(list(acc.basis) + prods)) if prods else acc
        if new.dim == acc.dim:
            return new
        acc = new


def mho_ideal_mod_derived(ctx: AlgebraContext, i: int) -> FpSubspace:
    """mho_i(I(G))F_pG + I(G')F_pG.

    Modulo the derived ideal the algebra is commutative, so p^i-th powers of
    a basis of I(G) span all p^i-th powers there; the raw mho ideal alone is
    never needed.
    """
    I = ctx.augmentation_ideal()
    rows = [ctx.p_power(b, i) for b in I.basis]
    P = FpSubspace(ctx.p, ctx.dim, np.array(rows))
    derived = characteristic_subgroup(ctx.group, "derived")
    return ideal_generated(ctx, P) + normal_subgroup_ideal(ctx, derived)


def unit_exponent_commutative(ctx: AlgebraContext, ideal: FpSubspace) -> int:
    """exp(1 + I(A)) = p^s with s minimal such that b^{p^s} = 0 on a basis.

    Valid because Frobenius is additive on a commutative algebra; the input
    ideal must be commutative and nilpotent.
    """
    for a in ideal.basis:
        for b in ideal.basis:
            if not np.array_equal(ctx.multiply(a, b), ctx.multiply(b, a)):
                raise AlgebraError("ideal is not commutative")
    s = 0
    while True:
        if all(not ctx.p_power(b, s).any() for b in ideal.basis):
            return ctx.p ** s
        s += 1
        if ctx.p ** s > ctx.dim:
            raise AlgebraError("ideal is not nilpotent")


def dimension_subgroup(ctx: AlgebraContext, m: int) -> Subgroup:
    """D_m = {g : g - 1 in I(G)^m}; m = 2 gives the Frattini subgroup."""
    if m < 1:
        raise AlgebraError("dimension_subgroup requires m >= 1")
    Im = power_space(ctx, ctx.augmentation_ideal(), m)
    elems = [g for g in range(ctx.dim)
             if Im.contains_vector(ctx.group_minus_one(g))]
    return Subgroup(ctx.group, tuple(elems))


@dataclass(frozen=True)
class AugmentedSubalgebra:
    """A unital subalgebra B of F_pG with its augmentation ideal B ∩ I(G)."""

    ctx: AlgebraContext
    space: FpSubspace
    aug_ideal: FpSubspace

    @classmethod
    def from_space(cls, ctx: AlgebraContext, space: FpSubspace) -> "AugmentedSubalgebra":
        if not space.contains_vector(ctx.one):
            raise AlgebraError("subalgebra does not contain the unit")
        for a in space.basis:
            for b in space.basis:
                if not space.contains_vector(ctx.multiply(a, b)):
                    raise AlgebraError("not a subalgebra: not closed under multiplication")
        aug = space.intersect(ctx.augmentation_ideal())
        if aug.dim != space.dim - 1:
            raise AlgebraError("augmentation ideal does not have codimension 1")
        return cls(ctx, space, aug)

    @property
    def dim(self) -> int:
        return self.space.dim

    def is_commutative(self) -> bool:
        return all(np.array_equal(self.ctx.multiply(a, b), self.ctx.multiply(b, a))
                   for a in self.space.basis for b in self.space.basis)

    def unit_exponent(self) -> int:
        """exp V(B) for commutative B."""
        if not self.is_commutative():
            raise AlgebraError("unit exponent shortcut requires commutativity")
        return unit_exponent_commutative(self.ctx, self.aug_ideal)


def group_algebra_subalgebra(ctx: AlgebraContext, elements) -> AugmentedSubalgebra:
    """The span of a set of group elements as an augmented subalgebra."""
    rows = np.array([ctx.basis_vector(g) for g in elements])
    return AugmentedSubalgebra.from_space(ctx, FpSubspace(ctx.p, ctx.dim, rows))


def frattini_quotient(ctx: AlgebraContext) -> QuotientSpace:
    """I(G)/I(G)^2, the additive side of the Frattini correspondence."""
    I = ctx.augmentation_ideal()
    return QuotientSpace(I, power_space(ctx, I, 2))
