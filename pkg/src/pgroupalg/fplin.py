"""Exact linear algebra over the prime field F_p.

Subspaces are stored as reduced row-echelon bases, so two equal subspaces
always carry bit-identical basis matrices and subspace equality is
structural equality.  Everything is integer arithmetic mod p; no floats.
"""

from __future__ import annotations

import numpy as np

SUPPORTED_PRIMES = (2, 3, 5)


class FpError(ValueError):
    """Prime/dimension mismatch or precondition violation."""


def _check_prime(p: int) -> None:
    if p not in SUPPORTED_PRIMES:
        raise FpError(f"unsupported prime {p}; supported: {SUPPORTED_PRIMES}")


def _inv_mod(a: int, p: int) -> int:
    return pow(int(a) % p, p - 2, p)


def rref(rows: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form mod p.  Returns (matrix, pivot columns)."""
    A = np.array(rows, dtype=np.int64) % p
    if A.ndim != 2:
        raise FpError("rref expects a 2-d array")
    nrows, ncols = A.shape
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        hits = np.nonzero(A[r:, c])[0]
        if hits.size == 0:
            continue
        i = r + int(hits[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * _inv_mod(A[r, c], p)) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], tuple(pivots)


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {x : A @ x = 0 (mod p)}."""
    A = np.asarray(A, dtype=np.int64) % p
    m, n = A.shape
    R, pivots = rref(A, p)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, c in zip(R, pivots):
            basis[k, c] = (-row[f]) % p
    return basis


def solve(A: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution y of A @ y = b (mod p), or None if inconsistent."""
    A = np.asarray(A, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    m, n = A.shape
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
    R, pivots = rref(aug, p)
    if n in pivots:
        return None
    y = np.zeros(n, dtype=np.int64)
    for row, c in zip(R, pivots):
        y[c] = row[n]
    return y


class FpSubspace:
    """A subspace of F_p^dim held as a canonical RREF basis."""

    __slots__ = ("p", "ambient", "basis", "pivots")

    def __init__(self, p: int, ambient: int, rows=None):
        _check_prime(p)
        self.p = p
        self.ambient = ambient
        if rows is None:
            rows = np.zeros((0, ambient), dtype=np.int64)
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, ambient)
        self.basis, self.pivots = rref(rows, p)
        self.basis.setflags(write=False)

    @classmethod
    def zero(cls, p: int, ambient: int) -> "FpSubspace":
        return cls(p, ambient)

    @classmethod
    def full(cls, p: int, ambient: int) -> "FpSubspace":
        return cls(p, ambient, np.eye(ambient, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _compat(self, other: "FpSubspace") -> None:
        if self.p != other.p or self.ambient != other.ambient:
            raise FpError("prime/ambient dimension mismatch")

    def reduce(self, vec) -> np.ndarray:
        """Residual of vec after elimination against the basis."""
        v = np.asarray(vec, dtype=np.int64).copy() % self.p
        if v.shape != (self.ambient,):
            raise FpError(f"vector length {v.shape} != ambient {self.ambient}")
        for row, c in zip(self.basis, self.pivots):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def contains_vector(self, vec) -> bool:
        return not self.reduce(vec).any()

    def contains(self, other: "FpSubspace") -> bool:
        self._compat(other)
        return all(self.contains_vector(row) for row in other.basis)

    def coordinates(self, vec) -> np.ndarray | None:
        """c with c @ basis == vec, or None if vec is outside the span."""
        v = np.asarray(vec, dtype=np.int64) % self.p
        c = np.zeros(self.dim, dtype=np.int64)
        for k, (row, piv) in enumerate(zip(self.basis, self.pivots)):
            if v[piv]:
                c[k] = v[piv]
                v = (v - v[piv] * row) % self.p
        if v.any():
            return None
        return c

    def sum(self, other: "FpSubspace") -> "FpSubspace":
        self._compat(other)
        return FpSubspace(self.p, self.ambient,
                          np.concatenate([self.basis, other.basis]))

    __add__ = sum

    def intersect(self, other: "FpSubspace") -> "FpSubspace":
        self._compat(other)
        if self.dim == 0 or other.dim == 0:
            return FpSubspace.zero(self.p, self.ambient)
        # x in both spans: x = cA @ A = cB @ B; kernel of [A^T | -B^T]
        M = np.concatenate([self.basis.T, -other.basis.T], axis=1) % self.p
        ker = nullspace(M, self.p)
        rows = (ker[:, :self.dim] @ self.basis) % self.p
        return FpSubspace(self.p, self.ambient, rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpSubspace):
            return NotImplemented
        return (self.p == other.p and self.ambient == other.ambient
                and self.pivots == other.pivots
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.p, self.ambient, self.pivots,
                     self.basis.tobytes()))

    def __repr__(self):
        return f"FpSubspace(p={self.p}, ambient={self.ambient}, dim={self.dim})"

    def basis_rows(self) -> list[list[int]]:
        return [list(map(int, row)) for row in self.basis]


def span(p: int, ambient: int, vectors) -> FpSubspace:
    return FpSubspace(p, ambient, np.array(list(vectors), dtype=np.int64).reshape(-1, ambient))


def complement_within(U: FpSubspace, W: FpSubspace,
                      S: FpSubspace | None = None) -> FpSubspace:
    """Extend S to a direct complement X of U inside W (U + X = W, U ∩ X = 0).

    Requires U ⊆ W, S ⊆ W and S ∩ U = 0.
    """
    U._compat(W)
    if not W.contains(U):
        raise FpError("complement_within: U is not contained in W")
    if S is None:
        S = FpSubspace.zero(U.p, U.ambient)
    if not W.contains(S):
        raise FpError("complement_within: S is not contained in W")
    if S.intersect(U).dim != 0:
        raise FpError("complement_within: S meets U nontrivially")
    chosen = [row for row in S.basis]
    acc = U.sum(S)
    for row in W.basis:
        if not acc.contains_vector(row):
            chosen.append(row)
            acc = acc.sum(span(U.p, U.ambient, [row]))
    X = FpSubspace(U.p, U.ambient, np.array(chosen).reshape(-1, U.ambient))
    assert U.sum(X) == W and U.intersect(X).dim == 0
    return X


class QuotientSpace:
    """W/U with a fixed section (complement basis) for deterministic lifts."""

    def __init__(self, W: FpSubspace, U: FpSubspace,
                 section: FpSubspace | None = None):
        if not W.contains(U):
            raise FpError("quotient_space: U is not contained in W")
        self.W = W
        self.U = U
        self.p = W.p
        self.ambient = W.ambient
        if section is None:
            section = complement_within(U, W)
        else:
            if U.sum(section) != W or U.intersect(section).dim != 0:
                raise FpError("quotient_space: invalid section")
        self.section = section.basis  # (q, ambient)
        # precompute a solver for [U.basis; section] row combinations
        self._stack = np.concatenate([U.basis, self.section]) % self.p

    @property
    def dim(self) -> int:
        return self.section.shape[0]

    def project(self, vec) -> np.ndarray:
        """Section coordinates of vec + U.  Raises if vec is outside W."""
        v = np.asarray(vec, dtype=np.int64) % self.p
        if self._stack.shape[0] == 0:
            if v.any():
                raise FpError("vector outside the quotient's ambient space W")
            return np.zeros(0, dtype=np.int64)
        x = solve(self._stack.T, v, self.p)
        if x is None:
            raise FpError("vector outside the quotient's ambient space W")
        return x[self.U.dim:]

    def lift(self, coords) -> np.ndarray:
        c = np.asarray(coords, dtype=np.int64) % self.p
        if c.shape != (self.dim,):
            raise FpError("coordinate length mismatch")
        if self.dim == 0:
            return np.zeros(self.ambient, dtype=np.int64)
        return (c @ self.section) % self.p

    def section_space(self) -> FpSubspace:
        return FpSubspace(self.p, self.ambient, self.section)


class LinearMap:
    """A linear map given on a basis of its domain.

    domain_basis holds representative vectors (rows, in the domain's ambient
    space); matrix row i is the image of domain_basis[i] in codomain
    coordinates.
    """

    def __init__(self, p: int, domain_basis: np.ndarray, matrix: np.ndarray,
                 codomain_dim: int):
        _check_prime(p)
        self.p = p
        self.domain_basis = np.asarray(domain_basis, dtype=np.int64) % p
        self.matrix = np.asarray(matrix, dtype=np.int64).reshape(
            self.domain_basis.shape[0], codomain_dim) % p
        self.codomain_dim = codomain_dim
        self._dom_space = FpSubspace(
            p, self.domain_basis.shape[1] if self.domain_basis.size else 0,
            self.domain_basis) if self.domain_basis.shape[0] else None

    def apply(self, vec) -> np.ndarray:
        space = FpSubspace(self.p, len(vec), self.domain_basis)
        # re-derive coordinates against the raw (non-RREF) basis
        c = solve(self.domain_basis.T, np.asarray(vec, dtype=np.int64), self.p)
        if c is None or not space.contains_vector(vec):
            raise FpError("vector outside the map's domain span")
        return (c @ self.matrix) % self.p

    def kernel(self) -> FpSubspace:
        """Kernel as a subspace of the domain's ambient space."""
        n = self.domain_basis.shape[1]
        if self.domain_basis.shape[0] == 0:
            return FpSubspace.zero(self.p, n)
        coeffs = nullspace(self.matrix.T, self.p)  # c with c @ matrix = 0
        rows = (coeffs @ self.domain_basis) % self.p
        return FpSubspace(self.p, n, rows)

    def image(self) -> FpSubspace:
        return FpSubspace(self.p, self.codomain_dim, self.matrix)

    def rank(self) -> int:
        return self.image().dim
