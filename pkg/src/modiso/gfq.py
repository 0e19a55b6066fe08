"""Exact arithmetic in small finite fields F_{p^k} and echelon-form linear algebra.

Field elements are stored as integer codes 0..q-1; the code's base-p digits are
the coefficients of the residue polynomial (ascending powers of the generator).
All arithmetic goes through precomputed q x q tables, so vector operations are
plain numpy fancy indexing and stay exact.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import CapExceeded

QCAP_DEFAULT = 81
QCAP_HARD = 256  # codes are uint8


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- polynomial helpers over Z/p (coefficient tuples, ascending powers) ------

def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for j, y in enumerate(m):
                a[shift + j] = (a[shift + j] - lead * y) % p
        a.pop()
    return _poly_trim(a)


def _is_irreducible(m, p):
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    deg = len(m) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for code in range(p**d):
            div = _digits_of(code, p, d) + (1,)
            if not _poly_mod(m, div, p):
                return False
    return True


def _digits_of(code, p, k):
    out = []
    for _ in range(k):
        out.append(code % p)
        code //= p
    return tuple(out)


def _smallest_irreducible(p, k):
    """Lexicographically smallest monic irreducible of degree k over Z/p.

    Polynomials are ordered by their descending-degree coefficient vector,
    i.e. by the integer value of the non-leading coefficients in base p.
    """
    if k == 1:
        return (0, 1)  # the polynomial x
    for code in range(p**k):
        m = _digits_of(code, p, k) + (1,)
        if _is_irreducible(m, p):
            return m
    raise AssertionError("no irreducible polynomial found")  # unreachable


class Scalar:
    """An element of a FiniteField; thin wrapper over an integer code."""

    __slots__ = ("field", "code")

    def __init__(self, field: "FiniteField", code: int):
        self.field = field
        self.code = int(code) % field.q

    @property
    def coeffs(self):
        return _digits_of(self.code, self.field.p, self.field.k)

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise ValueError("scalars from different fields")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.ADD[self.code, c])

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, self.field.NEG[self.code])

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.ADD[self.code, self.field.NEG[c]])

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.MUL[self.code, c])

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = 1, self.code
        MUL = self.field.MUL
        while e:
            if e & 1:
                out = MUL[out, base]
            base = MUL[base, base]
            e >>= 1
        return Scalar(self.field, out)

    def inverse(self):
        if self.code == 0:
            raise ZeroDivisionError("inverse of zero")
        return Scalar(self.field, self.field.INV[self.code])

    def __eq__(self, other):
        c = self._coerce(other) if not isinstance(other, Scalar) else (
            other.code if other.field is self.field else None)
        return c == self.code

    def __hash__(self):
        return hash((id(self.field), self.code))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "w" if i == 1 else f"w^{i}"
                terms.append(var if c == 1 else f"{c}*{var}")
        return "+".join(terms) if terms else "0"


class FiniteField:
    """F_{p^k} with table-driven arithmetic; immutable once built.

    Attributes ADD/MUL/NEG/INV are numpy code tables; DIG maps a code to its
    digit vector. modulus is the defining monic irreducible (ascending
    coefficients, length k+1).
    """

    def __init__(self, p: int, k: int, qcap: int = QCAP_DEFAULT):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        q = p**k
        if q > min(qcap, QCAP_HARD):
            raise CapExceeded("q_cap", f"field size {q} exceeds cap {qcap}")
        self.p, self.k, self.q = p, k, q
        self.modulus = _smallest_irreducible(p, k)
        assert k == 1 or _is_irreducible(self.modulus, p)

        self.DIG = np.array([_digits_of(c, p, k) for c in range(q)], dtype=np.uint8)
        self.PW = np.array([p**i for i in range(k)], dtype=np.int64)

        dig = self.DIG.astype(np.int64)
        add_dig = (dig[:, None, :] + dig[None, :, :]) % p
        self.ADD = (add_dig @ self.PW).astype(np.uint8)
        self.NEG = (((-dig) % p) @ self.PW).astype(np.uint8)

        mul = np.zeros((q, q), dtype=np.uint8)
        polys = [_poly_trim(_digits_of(c, p, k)) for c in range(q)]
        for a in range(q):
            for b in range(a, q):
                r = _poly_mod(_poly_mul(polys[a], polys[b], p), self.modulus, p)
                code = sum(c * p**i for i, c in enumerate(r))
                mul[a, b] = code
                mul[b, a] = code
        self.MUL = mul

        inv = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            inv[a] = self._pow_code(a, q - 2)
        self.INV = inv

        # reduction rows: x^(k+t) mod modulus, for t = 0..k-2 (digit matmul path)
        red = np.zeros((max(k - 1, 0), k), dtype=np.int64)
        for t in range(k - 1):
            r = _poly_mod((0,) * (k + t) + (1,), self.modulus, p)
            for i, c in enumerate(r):
                red[t, i] = c
        self.XRED = red

    def x_power_row(self, e: int) -> np.ndarray:
        """Digit row of x^e reduced mod the field modulus (length k)."""
        if not hasattr(self, "_xpow_cache"):
            self._xpow_cache = {}
        if e not in self._xpow_cache:
            r = _poly_mod((0,) * e + (1,), self.modulus, self.p)
            row = np.zeros(self.k, dtype=np.int64)
            row[: len(r)] = r
            self._xpow_cache[e] = row
        return self._xpow_cache[e]

    def _pow_code(self, a, e):
        out = 1
        base = int(a)
        while e:
            if e & 1:
                out = int(self.MUL[out, base])
            base = int(self.MUL[base, base])
            e >>= 1
        return out

    # -- element constructors -------------------------------------------------

    def scalar(self, value) -> Scalar:
        """Element with the given code (or pass a Scalar through)."""
        if isinstance(value, Scalar):
            if value.field is not self:
                raise ValueError("scalar from a different field")
            return value
        return Scalar(self, int(value) % self.q)

    def from_prime(self, value: int) -> Scalar:
        """Embed an integer via the prime subfield."""
        return Scalar(self, int(value) % self.p)

    @property
    def gen(self) -> Scalar:
        """The residue class of x (a multiplicative generator for our moduli of interest)."""
        if self.k == 1:
            raise ValueError("prime field has no extension generator")
        return Scalar(self, self.p)

    def elements(self):
        return [Scalar(self, c) for c in range(self.q)]

    # -- vectorized code arithmetic --------------------------------------------

    def vadd(self, u, v):
        return self.ADD[u, v]

    def vsub(self, u, v):
        return self.ADD[u, self.NEG[v]]

    def vneg(self, u):
        return self.NEG[u]

    def vsmul(self, s, u):
        return self.MUL[s, u]

    def matmul(self, A, B):
        """Field-exact product of two code matrices, (m,r) @ (r,n) -> (m,n).

        Integer matmuls are routed through float64 BLAS: every intermediate is
        bounded by (p-1)^2 * r < 2^53, so the float path is exact.
        """
        A = np.asarray(A, dtype=np.uint8)
        B = np.asarray(B, dtype=np.uint8)
        p, k = self.p, self.k
        if k == 1:
            prod = np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64)
            return (prod % p).astype(np.uint8)
        Ad = self.DIG[A].astype(np.float64)  # (m, r, k)
        Bd = self.DIG[B].astype(np.float64)  # (r, n, k)
        m, r = A.shape
        n = B.shape[1]
        conv = np.zeros((m, n, 2 * k - 1), dtype=np.float64)
        for e1 in range(k):
            for e2 in range(k):
                conv[:, :, e1 + e2] += Ad[:, :, e1] @ Bd[:, :, e2]
        low = np.rint(conv[:, :, :k]
                      + np.tensordot(conv[:, :, k:], self.XRED.astype(np.float64),
                                     axes=([2], [0]))).astype(np.int64)
        return ((low % p) @ self.PW).astype(np.uint8)

    def vec(self, entries) -> np.ndarray:
        """Code vector from a list of element codes or Scalars."""
        out = np.zeros(len(entries), dtype=np.uint8)
        for i, e in enumerate(entries):
            out[i] = e.code if isinstance(e, Scalar) else int(e) % self.q
        return out

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"


@lru_cache(maxsize=None)
def make_field(p: int, k: int, qcap: int = QCAP_DEFAULT) -> FiniteField:
    """The field F_{p^k} with the deterministic (lex-smallest) modulus."""
    return FiniteField(p, k, qcap)


# -- echelon-form subspaces ---------------------------------------------------

class EchelonBuilder:
    """Mutable accumulator for a reduced row echelon basis.

    Rows are kept fully reduced against each other at all times, so sifting a
    vector is a single coefficient-gather plus one field matmul. Freeze to get
    an immutable Subspace (rows sorted by pivot; the RREF basis is canonical,
    so the result does not depend on insertion order).
    """

    def __init__(self, field: FiniteField, ambient: int):
        self.field = field
        self.ambient = ambient
        self._buf = np.zeros((max(ambient, 1), ambient), dtype=np.uint8)
        self._pivots = []

    @property
    def dim(self):
        return len(self._pivots)

    @property
    def _rows(self):
        return self._buf[: self.dim]

    def sift(self, v: np.ndarray) -> np.ndarray:
        """Reduce v by every pivot row; the result has zeros in all pivot columns."""
        v = np.asarray(v, dtype=np.uint8)
        if v.shape != (self.ambient,):
            raise ValueError(f"vector length {v.shape} != ambient {self.ambient}")
        if not self._pivots:
            return v.copy()
        F = self.field
        coefs = v[self._pivots]
        if not coefs.any():
            return v.copy()
        delta = F.matmul(coefs[None, :], self._rows)[0]
        return F.vsub(v, delta)

    def _insert_reduced(self, r: np.ndarray, j: int) -> None:
        F = self.field
        r = F.vsmul(int(F.INV[r[j]]), r)
        d = self.dim
        if d:
            coefs = self._buf[:d, j].copy()
            if coefs.any():
                self._buf[:d] = F.vsub(self._buf[:d], F.matmul(coefs[:, None], r[None, :]))
        self._buf[d] = r
        self._pivots.append(j)

    def add(self, v: np.ndarray) -> bool:
        """Sift v and insert the residue if nonzero. Returns True if dim grew."""
        r = self.sift(v)
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            return False
        self._insert_reduced(r, int(nz[0]))
        return True

    def add_block(self, C: np.ndarray) -> int:
        """Insert many rows at once: the whole block is reduced against the
        current basis with one matmul per rank gained. Returns the dim growth.
        (The final subspace is the canonical RREF either way.)"""
        F = self.field
        C = np.unique(np.asarray(C, dtype=np.uint8), axis=0)
        added = 0
        while C.shape[0]:
            d = self.dim
            if d:
                coefs = C[:, self._pivots]
                if coefs.any():
                    C = F.vsub(C, F.matmul(coefs, self._buf[:d]))
            C = C[C.any(axis=1)]
            if not C.shape[0]:
                break
            row = C[0]
            self._insert_reduced(row.copy(), int(np.nonzero(row)[0][0]))
            C = C[1:]
            added += 1
        return added

    def add_many(self, vectors) -> None:
        for v in vectors:
            self.add(v)

    def freeze(self) -> "Subspace":
        d = self.dim
        if d:
            order = np.argsort(np.array(self._pivots, dtype=np.int64))
            rows = self._buf[:d][order].copy()
            pivots = tuple(self._pivots[i] for i in order)
        else:
            rows = np.zeros((0, self.ambient), dtype=np.uint8)
            pivots = ()
        return Subspace(self.field, self.ambient, rows, pivots)


class Subspace:
    """Immutable subspace of F^ambient in reduced row echelon form."""

    __slots__ = ("field", "ambient", "rows", "pivots")

    def __init__(self, field, ambient, rows, pivots):
        self.field = field
        self.ambient = ambient
        self.rows = rows
        self.rows.setflags(write=False)
        self.pivots = pivots

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def sift(self, v: np.ndarray) -> np.ndarray:
        if np.asarray(v).shape != (self.ambient,):
            raise ValueError("dimension mismatch")
        if not self.pivots:
            return np.asarray(v, dtype=np.uint8).copy()
        F = self.field
        v = np.asarray(v, dtype=np.uint8)
        coefs = v[list(self.pivots)]
        if not coefs.any():
            return v.copy()
        return F.vsub(v, F.matmul(coefs[None, :], self.rows)[0])

    def contains(self, v: np.ndarray):
        """(True, None) if v is in the span, else (False, normalized residue)."""
        r = self.sift(v)
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            return True, None
        F = self.field
        r = F.vsmul(int(F.INV[r[int(nz[0])]]), r)
        r.setflags(write=False)
        return False, r

    def __contains__(self, v):
        return self.contains(v)[0]

    def solve(self, v: np.ndarray):
        """Coefficients c with c @ rows == v, or None if v is outside the span."""
        v = np.asarray(v, dtype=np.uint8)
        coefs = v[list(self.pivots)] if self.pivots else np.zeros(0, dtype=np.uint8)
        if self.dim:
            recon = self.field.matmul(coefs[None, :], self.rows)[0]
        else:
            recon = np.zeros(self.ambient, dtype=np.uint8)
        if not np.array_equal(recon, v):
            return None
        return coefs

    def builder(self) -> EchelonBuilder:
        """A mutable copy, for extending this subspace."""
        b = EchelonBuilder(self.field, self.ambient)
        b._buf[: self.dim] = self.rows
        b._pivots = list(self.pivots)
        return b

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.ambient == other.ambient
                and self.pivots == other.pivots
                and np.array_equal(self.rows, other.rows))

    def __le__(self, other):
        return all(other.contains(r)[0] for r in self.rows)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, {self.field})"


def echelon_basis(vectors, field: FiniteField, ambient: int | None = None) -> Subspace:
    """Reduced row echelon basis of the span of the given code vectors."""
    vectors = [np.asarray(v, dtype=np.uint8) for v in vectors]
    if ambient is None:
        ambient = len(vectors[0]) if vectors else 0
    for v in vectors:
        if v.shape != (ambient,):
            raise ValueError("ragged input lengths")
    b = EchelonBuilder(field, ambient)
    b.add_many(vectors)
    return b.freeze()


def contains(S: Subspace, v) -> tuple:
    return S.contains(np.asarray(v, dtype=np.uint8))


def subspace_combine(A: Subspace, B: Subspace, mode: str) -> Subspace:
    """Sum or intersection of two subspaces of a common ambient space."""
    if A.ambient != B.ambient:
        raise ValueError("ambient mismatch")
    if A.field is not B.field:
        raise ValueError("field mismatch")
    if mode == "sum":
        b = A.builder()
        b.add_many(B.rows)
        return b.freeze()
    if mode != "intersection":
        raise ValueError(f"unknown mode {mode!r}")
    # kernel of the stacked basis: x @ A.rows + y @ B.rows = 0 gives
    # intersection elements x @ A.rows.
    if A.dim == 0 or B.dim == 0:
        return echelon_basis([], A.field, A.ambient)
    stacked = np.vstack([A.rows, B.rows])
    ker = null_space(stacked.T, A.field)
    vecs = [A.field.matmul(w[None, : A.dim], A.rows)[0] for w in ker.rows]
    out = echelon_basis(vecs, A.field, A.ambient)
    assert A.dim + B.dim == subspace_combine(A, B, "sum").dim + out.dim
    return out


class TaggedEchelon:
    """Echelon accumulator that tracks a tag vector (e.g. quotient
    coordinates) alongside each row; row operations apply to both."""

    def __init__(self, field: FiniteField, ambient: int, tagdim: int):
        self.field = field
        self.ambient = ambient
        self.tagdim = tagdim
        cap = max(ambient, 1)
        self._rows = np.zeros((cap, ambient), dtype=np.uint8)
        self._tags = np.zeros((cap, max(tagdim, 1)), dtype=np.uint8)
        self._pivots = []

    @property
    def dim(self):
        return len(self._pivots)

    def _reduce(self, v, t):
        F = self.field
        d = self.dim
        if d:
            coefs = v[self._pivots]
            if coefs.any():
                v = F.vsub(v, F.matmul(coefs[None, :], self._rows[:d])[0])
                t = F.vsub(t, F.matmul(coefs[None, :], self._tags[:d])[0])
        return v, t

    def add(self, v, tag) -> bool:
        F = self.field
        v = np.asarray(v, dtype=np.uint8).copy()
        t = np.zeros(max(self.tagdim, 1), dtype=np.uint8)
        t[: len(tag)] = tag
        v, t = self._reduce(v, t)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        j = int(nz[0])
        s = int(F.INV[v[j]])
        v, t = F.vsmul(s, v), F.vsmul(s, t)
        d = self.dim
        if d:
            coefs = self._rows[:d, j].copy()
            if coefs.any():
                self._rows[:d] = F.vsub(self._rows[:d], F.matmul(coefs[:, None], v[None, :]))
                self._tags[:d] = F.vsub(self._tags[:d], F.matmul(coefs[:, None], t[None, :]))
        self._rows[d] = v
        self._tags[d] = t
        self._pivots.append(j)
        return True

    def solve(self, v) -> np.ndarray:
        """Tag-combination expressing v; raises if v is outside the span."""
        F = self.field
        v = np.asarray(v, dtype=np.uint8)
        d = self.dim
        coefs = v[self._pivots] if d else np.zeros(0, dtype=np.uint8)
        recon = F.matmul(coefs[None, :], self._rows[:d])[0] if d else np.zeros(self.ambient, np.uint8)
        if not np.array_equal(recon, v):
            raise ValueError("vector outside the accumulated span")
        if d:
            return F.matmul(coefs[None, :], self._tags[:d])[0][: self.tagdim]
        return np.zeros(self.tagdim, dtype=np.uint8)


def invert_matrix(M, field: FiniteField) -> np.ndarray:
    """Inverse of a square code matrix (rows must be independent)."""
    M = np.asarray(M, dtype=np.uint8)
    d = M.shape[0]
    te = TaggedEchelon(field, d, d)
    for i in range(d):
        tag = np.zeros(d, dtype=np.uint8)
        tag[i] = 1
        if not te.add(M[i], tag):
            raise ValueError("matrix is singular")
    out = np.zeros((d, d), dtype=np.uint8)
    for i in range(d):
        e = np.zeros(d, dtype=np.uint8)
        e[i] = 1
        out[i] = te.solve(e)
    # rows of out give e_i = out[i] @ M, i.e. out @ M = I
    return out


def null_space(M, field: FiniteField) -> Subspace:
    """Basis of {v : M @ v = 0} for a code matrix M with shape (m, n)."""
    M = np.asarray(M, dtype=np.uint8)
    m, n = M.shape
    row_space = echelon_basis(list(M), field, n)
    R, piv = row_space.rows, list(row_space.pivots)
    free = [j for j in range(n) if j not in set(piv)]
    vecs = []
    for f in free:
        v = np.zeros(n, dtype=np.uint8)
        v[f] = 1
        if piv:
            v[piv] = field.NEG[R[:, f]]
        vecs.append(v)
    return echelon_basis(vecs, field, n)
