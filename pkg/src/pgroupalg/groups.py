"""Finite p-groups as explicit Cayley tables.

All groups live as order x order index tables with the identity pinned at
index 0.  At the scales handled here (order <= 256, oracle work <= 64)
every subgroup question is answered by exact enumeration.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_ORDER = 256
ORACLE_CAP = 64


class GroupError(ValueError):
    pass


class NotNormalError(GroupError):
    pass


class OracleCapExceeded(GroupError):
    pass


class RetractionError(GroupError):
    """No retraction G -> <h> fixing h exists."""


def _prime_power(n: int) -> tuple[int, int] | None:
    """(p, k) with n = p^k, or None."""
    if n < 2:
        return None
    for p in (2, 3, 5, 7):
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            return (p, k) if n == 1 else None
    return None


@dataclass(frozen=True, eq=False)
class PGroup:
    p: int
    table: np.ndarray
    name: str = ""

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        object.__setattr__(self, "table", t)
        n = t.shape[0]
        if t.shape != (n, n):
            raise GroupError("Cayley table must be square")
        if n > MAX_ORDER:
            raise GroupError(f"order {n} exceeds the cap {MAX_ORDER}")
        pp = _prime_power(n) if n > 1 else (self.p, 0)
        if pp is None or pp[0] != self.p and n > 1:
            raise GroupError(f"order {n} is not a power of p={self.p}")
        if t.min() < 0 or t.max() >= n:
            raise GroupError("table entries out of range")
        if not (np.array_equal(t[0], np.arange(n)) and
                np.array_equal(t[:, 0], np.arange(n))):
            raise GroupError("index 0 is not a two-sided identity")
        # Latin square: rows and columns are permutations
        ar = np.arange(n)
        if not all(np.array_equal(np.sort(t[i]), ar) and
                   np.array_equal(np.sort(t[:, i]), ar) for i in range(n)):
            raise GroupError("table rows/columns are not permutations")
        # associativity, checked exhaustively (order <= 256)
        small = t.astype(np.int32)
        left = small[small]             # left[a,b,c] = (ab)c
        right = small[:, small]         # right[a,b,c] = a(bc)
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            raise GroupError(f"associativity fails at triple {tuple(int(x) for x in bad)}")
        inv = (t == 0).argmax(axis=1)
        object.__setattr__(self, "_inv", inv)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self._inv[a])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        acc, base = 0, g
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def element_order(self, g: int) -> int:
        if not 0 <= g < self.order:
            raise GroupError(f"element index {g} out of range")
        o, x = 1, g
        while x != 0:
            x = self.mul(x, g)
            o += 1
        return o

    def exponent(self) -> int:
        return max(self.element_order(g) for g in range(self.order))

    def is_abelian(self) -> bool:
        return np.array_equal(self.table, self.table.T)

    def commutator(self, a: int, b: int) -> int:
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def conjugate(self, g: int, by: int) -> int:
        return self.mul(self.mul(by, g), self.inv(by))

    def __repr__(self):
        return f"PGroup(p={self.p}, order={self.order}, name={self.name!r})"


def _closure(G: PGroup, seed) -> frozenset:
    elems = set(seed) | {0}
    frontier = np.array(sorted(elems), dtype=np.int64)
    while True:
        prods = np.unique(G.table[np.ix_(frontier, frontier)])
        new = set(map(int, prods)) - elems
        if not new:
            return frozenset(elems)
        elems |= new
        frontier = np.array(sorted(elems), dtype=np.int64)


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: PGroup
    elements: tuple

    def __post_init__(self):
        elems = tuple(sorted(set(int(e) for e in self.elements)))
        object.__setattr__(self, "elements", elems)
        if 0 not in elems:
            raise GroupError("subgroup must contain the identity")
        eset = set(elems)
        for a in elems:
            if self.parent.inv(a) not in eset:
                raise GroupError("subgroup not closed under inverses")
            for b in elems:
                if self.parent.mul(a, b) not in eset:
                    raise GroupError("subgroup not closed under multiplication")
        if self.parent.order % len(elems):
            raise GroupError("subgroup size does not divide group order")

    @classmethod
    def generated(cls, parent: PGroup, gens) -> "Subgroup":
        return cls(parent, tuple(sorted(_closure(parent, gens))))

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, g: int) -> bool:
        return g in set(self.elements)

    def is_normal(self) -> bool:
        G, eset = self.parent, set(self.elements)
        return all(G.conjugate(h, g) in eset
                   for h in self.elements for g in range(G.order))

    def is_abelian(self) -> bool:
        G = self.parent
        return all(G.mul(a, b) == G.mul(b, a)
                   for a in self.elements for b in self.elements)

    def is_trivial(self) -> bool:
        return self.order == 1

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.parent is other.parent
                and self.elements == other.elements)

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent!r})"


def trivial_subgroup(G: PGroup) -> Subgroup:
    return Subgroup(G, (0,))


def full_subgroup(G: PGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def subgroup_to_pgroup(S: Subgroup, name: str = "") -> tuple[PGroup, list[int]]:
    """Re-index a subgroup as a standalone PGroup.

    Returns (group, elems) where elems[i] is the parent index of element i.
    """
    elems = list(S.elements)  # sorted; identity 0 comes first
    pos = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            table[i, j] = pos[S.parent.mul(a, b)]
    return PGroup(S.parent.p, table, name or f"sub{n}<{S.parent.name}>"), elems


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: PGroup
    target: PGroup
    images: tuple

    def __post_init__(self):
        imgs = np.asarray(self.images, dtype=np.int64)
        object.__setattr__(self, "images", tuple(int(x) for x in imgs))
        if imgs[0] != 0:
            raise GroupError("homomorphism must send identity to identity")
        Ts, Tt = self.source.table, self.target.table
        if not np.array_equal(imgs[Ts], Tt[np.ix_(imgs, imgs)]):
            raise GroupError("images do not define a homomorphism")

    def __call__(self, g: int) -> int:
        return self.images[g]

    def kernel(self) -> Subgroup:
        return Subgroup(self.source,
                        tuple(g for g in range(self.source.order)
                              if self.images[g] == 0))

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order


def characteristic_subgroup(G: PGroup, kind: str, i: int = 1) -> Subgroup:
    """center, derived, omega(i), agemo(i) or frattini subgroup of G."""
    if kind == "center":
        T = G.table
        elems = [g for g in range(G.order) if np.array_equal(T[g], T[:, g])]
        return Subgroup(G, tuple(elems))
    if kind == "derived":
        gens = {G.commutator(a, b)
                for a in range(G.order) for b in range(G.order)}
        return Subgroup.generated(G, gens)
    if kind == "omega":
        if i < 1:
            raise GroupError("omega requires i >= 1")
        q = G.p ** i
        gens = {g for g in range(G.order) if G.power(g, q) == 0}
        return Subgroup.generated(G, gens)
    if kind == "agemo":
        if i < 1:
            raise GroupError("agemo requires i >= 1")
        q = G.p ** i
        gens = {G.power(g, q) for g in range(G.order)}
        return Subgroup.generated(G, gens)
    if kind == "frattini":
        # agemo(1) * derived, valid for p-groups
        a = characteristic_subgroup(G, "agemo", 1)
        d = characteristic_subgroup(G, "derived")
        return Subgroup.generated(G, set(a.elements) | set(d.elements))
    raise GroupError(f"unknown characteristic subgroup kind {kind!r}")


def quotient_group(G: PGroup, N: Subgroup) -> tuple[PGroup, GroupHom]:
    if N.parent is not G:
        raise GroupError("subgroup does not belong to this group")
    if not N.is_normal():
        raise NotNormalError("subgroup is not normal")
    nelems = np.array(N.elements, dtype=np.int64)
    rep = np.array([int(G.table[g, nelems].min()) for g in range(G.order)])
    reps = sorted(set(int(r) for r in rep))
    idx = {r: i for i, r in enumerate(reps)}  # identity coset has rep 0 -> index 0
    coset = np.array([idx[int(r)] for r in rep])
    q = len(reps)
    table = np.zeros((q, q), dtype=np.int64)
    for a, ra in enumerate(reps):
        for b, rb in enumerate(reps):
            table[a, b] = coset[G.mul(ra, rb)]
    Q = PGroup(G.p, table, name=f"{G.name}/N{N.order}")
    pi = GroupHom(G, Q, tuple(int(c) for c in coset))
    assert pi.kernel() == N
    return Q, pi


def r_subquotient(G: PGroup, i: int) -> tuple[PGroup, Subgroup]:
    """R_i(G) as an abelian group, with its embedding into G/(agemo_i * derived)."""
    derived = characteristic_subgroup(G, "derived")
    agemo = characteristic_subgroup(G, "agemo", i)
    N = Subgroup.generated(G, set(derived.elements) | set(agemo.elements))
    Q, pi = quotient_group(G, N)
    center = characteristic_subgroup(G, "center")
    q = G.p ** i
    omega_z = Subgroup.generated(
        G, {g for g in center.elements if G.power(g, q) == 0})
    R_sub = Subgroup.generated(Q, {pi(g) for g in omega_z.elements})
    R, _ = subgroup_to_pgroup(R_sub, name=f"R_{i}({G.name})")
    return R, R_sub


def abelian_invariants(A) -> tuple[int, ...]:
    """Cyclic decomposition exponents of an abelian p-group, descending."""
    if isinstance(A, Subgroup):
        A, _ = subgroup_to_pgroup(A)
    if not A.is_abelian():
        raise GroupError("abelian_invariants requires an abelian group")
    if A.order == 1:
        return ()
    p = A.p
    orders = [A.element_order(g) for g in range(A.order)]
    s = max(orders)
    smax = round(math.log(s, p))
    # m_k = log_p #|{g : g^{p^k} = 1}| = sum_i min(e_i, k)
    m = [0]
    for k in range(1, smax + 1):
        cnt = sum(1 for o in orders if o <= p ** k)
        m.append(round(math.log(cnt, p)))
    ge = [m[k] - m[k - 1] for k in range(1, smax + 1)]  # #invariants >= p^k
    invs: list[int] = []
    for k in range(1, smax + 1):
        eq_k = ge[k - 1] - (ge[k] if k < smax else 0)
        invs.extend([p ** k] * eq_k)
    invs.sort(reverse=True)
    assert math.prod(invs) == A.order
    return tuple(invs)


@lru_cache(maxsize=None)
def all_subgroups(G: PGroup) -> tuple[Subgroup, ...]:
    """Every subgroup of G, by closure of generator subsets."""
    seen = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        H = frontier.pop()
        for g in range(1, G.order):
            if g in H:
                continue
            K = _closure(G, H | {g})
            if K not in seen:
                seen.add(K)
                frontier.append(K)
    subs = [Subgroup(G, tuple(sorted(S))) for S in seen]
    subs.sort(key=lambda S: (S.order, S.elements))
    return tuple(subs)


def direct_factor_oracle(G: PGroup, cap: int = ORACLE_CAP) -> list[tuple[Subgroup, Subgroup]]:
    """All unordered internal direct decompositions G = H x K, both nontrivial.

    Brute force over the normal subgroup lattice; empty list means G is
    directly indecomposable.
    """
    if G.order > cap:
        raise OracleCapExceeded(f"order {G.order} exceeds oracle cap {cap}")
    normals = [S for S in all_subgroups(G) if 1 < S.order < G.order and S.is_normal()]
    out = []
    for a, H in enumerate(normals):
        for K in normals[a:]:
            if H.order * K.order != G.order:
                continue
            if len(set(H.elements) & set(K.elements)) != 1:
                continue
            out.append((H, K))
    return out


def is_internal_direct_product(G: PGroup, H: Subgroup, K: Subgroup) -> bool:
    if H.order * K.order != G.order:
        return False
    if len(set(H.elements) & set(K.elements)) != 1:
        return False
    if not (H.is_normal() and K.is_normal()):
        return False
    return all(G.mul(a, b) == G.mul(b, a)
               for a in H.elements for b in K.elements)


def _abelian_basis(A: PGroup) -> list[tuple[int, int]]:
    """Generators of independent cyclic factors of an abelian group,
    as (element, order) pairs with descending orders."""
    if A.order == 1:
        return []
    orders = [A.element_order(g) for g in range(A.order)]
    m = max(orders)
    g = orders.index(m)
    if m == A.order:
        return [(g, m)]
    cyc = set(Subgroup.generated(A, (g,)).elements)
    for K in all_subgroups(A):
        if K.order == A.order // m and len(set(K.elements) & cyc) == 1:
            Kp, elems = subgroup_to_pgroup(K)
            return [(g, m)] + [(elems[x], o) for x, o in _abelian_basis(Kp)]
    raise GroupError("no complement found for a maximal cyclic factor")


def retraction_complement(G: PGroup, h: int) -> Subgroup:
    """Kernel of a homomorphism chi: G -> <h> with chi(h) = h.

    Solved on the abelianization; raises RetractionError when no such chi
    exists (h then admits no complement through this route).
    """
    T = G.table
    if not np.array_equal(T[h], T[:, h]):
        raise GroupError("h must be central")
    m = G.element_order(h)
    if m == 1:
        return full_subgroup(G)
    derived = characteristic_subgroup(G, "derived")
    A, pi = quotient_group(G, derived)
    basis = _abelian_basis(A)
    # coordinates of every element of A in the chosen basis
    coords: dict[int, tuple] = {}
    for tup in itertools.product(*(range(o) for _, o in basis)):
        x = 0
        for (g, _), c in zip(basis, tup):
            x = A.mul(x, A.power(g, c))
        coords.setdefault(x, tup)
    hb = pi(h)
    c = coords[hb]
    allowed = [range(0, m, m // math.gcd(o, m)) for _, o in basis]
    for xs in itertools.product(*allowed):
        if sum(cj * xj for cj, xj in zip(c, xs)) % m == 1:
            chi = [sum(cj * xj for cj, xj in zip(coords[pi(g)], xs)) % m
                   for g in range(G.order)]
            K = Subgroup(G, tuple(g for g in range(G.order) if chi[g] == 0))
            H = Subgroup.generated(G, (h,))
            if not is_internal_direct_product(G, H, K):
                raise GroupError("retraction kernel failed direct product check")
            return K
    raise RetractionError(f"no retraction onto <h> with chi(h)=h (h={h})")


def split_into_indecomposables(G: PGroup, cap: int = ORACLE_CAP) -> list[PGroup]:
    """Decompose G into directly indecomposable factors (oracle-based).

    Krull-Schmidt guarantees the multiset of isomorphism types does not
    depend on the decomposition path, so the first oracle pair suffices.
    """
    pairs = direct_factor_oracle(G, cap=cap)
    if not pairs:
        return [G]
    H, K = pairs[0]
    Hp, _ = subgroup_to_pgroup(H)
    Kp, _ = subgroup_to_pgroup(K)
    return split_into_indecomposables(Hp, cap) + split_into_indecomposables(Kp, cap)


def has_cyclic_factor_of_order(G: PGroup, q: int, cap: int = ORACLE_CAP) -> bool:
    """Oracle answer: does G have a cyclic direct factor of order exactly q?"""
    if G.order == 1:
        return q == 1
    factors = split_into_indecomposables(G, cap=cap)
    return any(F.order == q and F.exponent() == q for F in factors)


# ---------------------------------------------------------------------------
# catalog constructors


def _cyclic_table(n: int) -> np.ndarray:
    a = np.arange(n)
    return (a[:, None] + a[None, :]) % n


def _metacyclic(p: int, m: int, t: int, e: int, name: str) -> PGroup:
    """<r, s | r^m = 1, s^2 = r^e, s r s^-1 = r^t>, index of r^i s^j is i + m*j."""
    n = 2 * m
    table = np.zeros((n, n), dtype=np.int64)
    for i1 in range(m):
        for j1 in range(2):
            for i2 in range(m):
                for j2 in range(2):
                    if j1 == 0:
                        i, j = (i1 + i2) % m, j2
                    else:
                        i = (i1 + t * i2 + (e if j2 else 0)) % m
                        j = (j1 + j2) % 2
                    table[i1 + m * j1, i2 + m * j2] = i + m * j
    return PGroup(p, table, name)


def catalog_build(family: str, *params) -> PGroup:
    """Built-in group constructors for the test corpus."""
    if family == "cyclic":
        p, n = params
        if p not in (2, 3, 5):
            raise GroupError(f"unsupported prime {p}")
        order = p ** n
        if order > MAX_ORDER:
            raise GroupError("order exceeds cap")
        return PGroup(p, _cyclic_table(order), name=f"C{order}")
    if family == "abelian":
        p, exps = params
        gs = [catalog_build("cyclic", p, e) for e in exps]
        G = gs[0]
        for H in gs[1:]:
            G = catalog_build("direct_product", G, H)
        return PGroup(G.p, G.table,
                      name="x".join(f"C{p ** e}" for e in exps))
    if family == "dihedral":
        (order,) = params
        if order < 8 or order & (order - 1):
            raise GroupError("dihedral: order must be a 2-power >= 8")
        return _metacyclic(2, order // 2, order // 2 - 1, 0, f"D{order}")
    if family == "quaternion":
        (order,) = params
        if order < 8 or order & (order - 1):
            raise GroupError("quaternion: order must be a 2-power >= 8")
        m = order // 2
        return _metacyclic(2, m, m - 1, m // 2, f"Q{order}")
    if family == "semidihedral":
        (order,) = params
        if order < 16 or order & (order - 1):
            raise GroupError("semidihedral: order must be a 2-power >= 16")
        m = order // 2
        return _metacyclic(2, m, m // 2 - 1, 0, f"SD{order}")
    if family == "modular_maximal_cyclic":
        p, order = params
        pp = _prime_power(order)
        if pp is None or pp[0] != p or pp[1] < 3 or (p == 2 and order < 16):
            raise GroupError("modular_maximal_cyclic: invalid parameters")
        m = order // p
        if p == 2:
            return _metacyclic(2, m, m // 2 + 1, 0, f"M{order}")
        return _modular_odd(p, order)
    if family == "heisenberg":
        (p,) = params
        return _heisenberg(p)
    if family == "extraspecial":
        p, sign = params
        if sign == "+":
            return _heisenberg(p)
        if sign == "-":
            if p == 2:
                return catalog_build("quaternion", 8)
            return _modular_odd(p, p ** 3)
        raise GroupError("extraspecial: sign must be '+' or '-'")
    if family == "direct_product":
        G1, G2 = params
        if G1.p != G2.p:
            raise GroupError("direct_product: mismatched primes")
        n1, n2 = G1.order, G2.order
        if n1 * n2 > MAX_ORDER:
            raise GroupError("order exceeds cap")
        T = (G1.table[:, None, :, None] * n2 + G2.table[None, :, None, :])
        table = T.reshape(n1 * n2, n1 * n2)
        return PGroup(G1.p, table, name=f"{G1.name}x{G2.name}")
    raise GroupError(f"unknown catalog family {family!r}")


def _heisenberg(p: int) -> PGroup:
    n = p ** 3
    table = np.zeros((n, n), dtype=np.int64)
    for a1, b1, c1 in itertools.product(range(p), repeat=3):
        for a2, b2, c2 in itertools.product(range(p), repeat=3):
            a, b = (a1 + a2) % p, (b1 + b2) % p
            c = (c1 + c2 + a1 * b2) % p
            table[a1 * p * p + b1 * p + c1, a2 * p * p + b2 * p + c2] = \
                a * p * p + b * p + c
    return PGroup(p, table, name=f"He{p}")


def _modular_odd(p: int, order: int) -> PGroup:
    """M_{p^k} for odd p: <r, s | r^{p^{k-1}}, s^p, s r s^-1 = r^{1+p^{k-2}}>."""
    m = order // p
    t = m // p + 1
    table = np.zeros((order, order), dtype=np.int64)
    for i1 in range(m):
        for j1 in range(p):
            for i2 in range(m):
                for j2 in range(p):
                    # s^j r^i = r^{i t^j} s^j
                    i = (i1 + i2 * pow(t, j1, m)) % m
                    j = (j1 + j2) % p
                    table[i1 + m * j1, i2 + m * j2] = i + m * j
    return PGroup(p, table, name=f"M{order}")
