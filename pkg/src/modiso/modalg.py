"""Modular group algebra engine.

Elements of FG are uint8 code vectors indexed by group elements. The module
computes the augmentation-ideal filtration, relative augmentation ideals, Lie
power ideals, Zassenhaus ideals, structure-constant quotient algebras (both
unital quotients FG/J and radical sections I/J), algebra-side dimension
subgroups, power-map kernel sizes, and the small group ring.
"""

from __future__ import annotations

import numpy as np

from .errors import CapExceeded
from .gfq import EchelonBuilder, FiniteField, Subspace, TaggedEchelon, echelon_basis
from .groups import FiniteGroup, Subgroup

ALGEBRA_ORDER_CAP = 256
ENUM_CAP_DEFAULT = 1 << 24


class GroupAlgebra:
    """FG for a finite group G and finite field F."""

    def __init__(self, group: FiniteGroup, field: FiniteField, order_cap: int = ALGEBRA_ORDER_CAP):
        if group.n > order_cap:
            raise CapExceeded(
                "algebra_order_cap",
                f"|G| = {group.n} exceeds the algebra-side cap {order_cap}")
        self.group = group
        self.field = field
        self.n = group.n
        self._cache = {}

    # -- element arithmetic ------------------------------------------------------

    def zero(self) -> np.ndarray:
        return np.zeros(self.n, dtype=np.uint8)

    def unit(self) -> np.ndarray:
        v = self.zero()
        v[self.group.id] = 1
        return v

    def basis(self, g: int) -> np.ndarray:
        v = self.zero()
        v[g] = 1
        return v

    def basis_minus_one(self, g: int) -> np.ndarray:
        """The vector g - 1."""
        v = self.zero()
        F = self.field
        v[g] = F.vadd(v[g], 1)
        v[self.group.id] = F.vsub(v[self.group.id], 1)
        return v

    def right_mul_matrix(self, y: np.ndarray) -> np.ndarray:
        """Matrix R with (x @ R) = x * y; row h of R is e_h * y."""
        return np.asarray(y, dtype=np.uint8)[self.group.mul[self.group.inv]]

    def mul(self, x, y) -> np.ndarray:
        """Convolution product in FG."""
        x = np.asarray(x, dtype=np.uint8)
        return self.field.matmul(x[None, :], self.right_mul_matrix(y))[0]

    def translate(self, rows: np.ndarray, g: int, side: str) -> np.ndarray:
        """rows * g (side='right') or g * rows (side='left'); a column permutation."""
        G = self.group
        invg = int(G.inv[g])
        perm = G.mul[invg] if side == "left" else G.mul[:, invg]
        return np.asarray(rows, dtype=np.uint8)[..., perm]

    def augmentation(self, x) -> int:
        F = self.field
        out = 0
        for c in np.asarray(x, dtype=np.uint8):
            out = int(F.ADD[out, c])
        return out

    def __repr__(self):
        return f"GroupAlgebra(|G|={self.n}, {self.field})"


def group_algebra(G: FiniteGroup, F: FiniteField, order_cap: int = ALGEBRA_ORDER_CAP) -> GroupAlgebra:
    """FG, cached on the group so radical filtrations are computed once."""
    if G.n > order_cap:
        raise CapExceeded(
            "algebra_order_cap",
            f"|G| = {G.n} exceeds the algebra-side cap {order_cap}")
    key = ("algebra", F.p, F.k)
    if key not in G._cache:
        G._cache[key] = GroupAlgebra(G, F, order_cap)
    return G._cache[key]


def alg_mul(A: GroupAlgebra, x, y) -> np.ndarray:
    return A.mul(x, y)


class Ideal:
    """A two-sided ideal of FG, carried by an echelonized subspace.

    Closure under left/right multiplication is verified against the group's
    generators at construction (which implies closure under all of G).
    """

    def __init__(self, algebra: GroupAlgebra, space: Subspace, check: bool = True):
        self.algebra = algebra
        self.space = space
        if check:
            for g in algebra.group.gens:
                for side in ("left", "right"):
                    moved = algebra.translate(space.rows, g, side)
                    for row in moved:
                        if not space.contains(row)[0]:
                            raise ValueError("subspace is not a two-sided ideal")
        self.two_sided_verified = True

    @property
    def dim(self) -> int:
        return self.space.dim

    def contains(self, v) -> bool:
        return self.space.contains(v)[0]

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.space == other.space

    def __repr__(self):
        return f"Ideal(dim={self.dim} of {self.algebra})"


def _zero_ideal(A: GroupAlgebra) -> Ideal:
    return Ideal(A, echelon_basis([], A.field, A.n), check=False)


def augmentation_ideal(A: GroupAlgebra) -> Ideal:
    key = "delta1"
    if key not in A._cache:
        b = EchelonBuilder(A.field, A.n)
        for g in range(A.n):
            if g != A.group.id:
                b.add(A.basis_minus_one(g))
        A._cache[key] = Ideal(A, b.freeze())
    return A._cache[key]


def augmentation_powers(A: GroupAlgebra, n_max: int | None = None):
    """[Δ^1, Δ^2, ...]; stops at the first zero power (or after n_max terms).

    Δ^(m+1) is generated from Δ^m by right-multiplying every basis row by
    (g - 1) for every g in G; right translation is a column permutation, so
    each candidate batch is one gather and one subtraction.
    """
    A.group.require_p_group()
    chain = A._cache.setdefault("delta_chain", [augmentation_ideal(A)])
    while chain[-1].dim > 0 and (n_max is None or len(chain) < n_max):
        prev = chain[-1].space
        b = EchelonBuilder(A.field, A.n)
        for g in range(A.n):
            if g == A.group.id:
                continue
            b.add_block(A.field.vsub(A.translate(prev.rows, g, "right"), prev.rows))
        nxt = b.freeze()
        assert nxt.dim < prev.dim or prev.dim == 0
        chain.append(Ideal(A, nxt, check=False))
    if n_max is None:
        return list(chain)
    out = list(chain[:n_max])
    while len(out) < n_max:  # pad a local copy only; the cache stays clean
        out.append(chain[-1])
    return out


def jennings_dims(A: GroupAlgebra):
    """Dimensions of the radical-power sections Δ^m / Δ^(m+1)."""
    pows = augmentation_powers(A)
    dims = [p.dim for p in pows]
    return [a - b for a, b in zip(dims, dims[1:] + [0] * (dims[-1] > 0))]


def relative_augmentation_ideal(A: GroupAlgebra, N: Subgroup) -> Ideal:
    """Δ(N)FG for N normal in G: the ideal generated by {u - 1 : u in N}.

    Spanned by e_x - e_rep over the right cosets of N, so dim = |G| - [G:N].
    """
    if N.parent is not A.group or not N.is_normal():
        raise ValueError("N must be a normal subgroup of G")
    key = ("relaug", N._key)
    if key not in A._cache:
        G = A.group
        b = EchelonBuilder(A.field, A.n)
        seen = np.zeros(A.n, dtype=bool)
        F = A.field
        for g in range(A.n):
            if seen[g]:
                continue
            coset = np.sort(G.mul[N.elems, g])
            seen[coset] = True
            rep = int(coset[0])
            for x in coset[1:].tolist():
                v = A.zero()
                v[x] = 1
                v[rep] = F.NEG[1]
                b.add(v)
        space = b.freeze()
        assert space.dim == A.n - A.n // N.order
        A._cache[key] = Ideal(A, space)
    return A._cache[key]


def lie_power_ideals(A: GroupAlgebra, i_max: int | None = None):
    """The Lie power series: first term Δ, each next the ideal closure of the
    span of commutators [g, u] with u running over the previous basis."""
    chain = A._cache.setdefault("lie_chain", [augmentation_ideal(A)])
    while chain[-1].dim > 0 and (i_max is None or len(chain) < i_max):
        prev = chain[-1].space
        b = EchelonBuilder(A.field, A.n)
        F = A.field
        for g in range(A.n):
            b.add_block(F.vsub(A.translate(prev.rows, g, "left"),
                               A.translate(prev.rows, g, "right")))
        # ideal closure to a fixed point (translation by every group element)
        grew = True
        while grew:
            grew = False
            cur = b.freeze()
            for g in range(A.n):
                for side in ("left", "right"):
                    grew |= b.add_block(A.translate(cur.rows, g, side)) > 0
        chain.append(Ideal(A, b.freeze()))
        if chain[-1].dim == chain[-2].dim and chain[-1].dim > 0:
            raise AssertionError("Lie power series stalled above zero")
    if i_max is None:
        return list(chain)
    out = list(chain[:i_max])
    while len(out) < i_max:
        out.append(chain[-1])
    return out


def dimension_subgroups_algebraic(A: GroupAlgebra, n_max: int | None = None):
    """D_n = {g : g - 1 in Δ^n}, read off the radical filtration directly."""
    G = A.group
    pows = augmentation_powers(A, n_max=n_max)
    out = []
    for P in pows:
        members = [g for g in range(A.n) if P.contains(A.basis_minus_one(g))]
        out.append(G.subgroup(np.array(members, dtype=np.int32)))
        if n_max is None and out[-1].order == 1:
            break
    return out


# -- structure-constant quotients ---------------------------------------------

class QuotientAlgebra:
    """A structure-constant algebra: a section I/J of FG (or FG/J when unital).

    Elements are coordinate vectors of length dim; sc[i, j] holds the
    coordinates of (rep_i * rep_j) mod J.
    """

    def __init__(self, field, sc, reps=None, solver=None, unital=False, unit=None, label=""):
        self.field = field
        self.sc = sc
        self.dim = sc.shape[0]
        self.reps = reps  # (dim, n) ambient lifts, or None for abstract algebras
        self._solver = solver
        self.unital = unital
        self.unit = unit
        self.label = label
        self._cache = {}
        self._check_associative()
        if unital:
            for i in range(self.dim):
                e = np.zeros(self.dim, dtype=np.uint8)
                e[i] = 1
                assert np.array_equal(self.mul(self.unit, e), e)
                assert np.array_equal(self.mul(e, self.unit), e)

    def _check_associative(self):
        """Exhaustive on basis triples for small dimensions, sampled beyond
        (mirrors the group-table policy)."""
        d = self.dim
        if d == 0:
            return
        F = self.field
        if d <= 24:
            for l in range(d):
                lhs = F.matmul(self.sc.reshape(d * d, d), self.sc[:, l, :]).reshape(d, d, d)
                rhs = np.zeros_like(lhs)
                for i in range(d):
                    rhs[i] = F.matmul(self.sc[:, l, :], self.sc[i])
                if not np.array_equal(lhs, rhs):
                    raise AssertionError("structure constants are not associative")
        else:
            rng = np.random.default_rng(0)
            X, Y, Z = rng.integers(0, F.q, size=(3, 200, d)).astype(np.uint8)
            if not np.array_equal(self.mul_batch(self.mul_batch(X, Y), Z),
                                  self.mul_batch(X, self.mul_batch(Y, Z))):
                raise AssertionError("structure constants are not associative")

    def project(self, ambient_vec) -> np.ndarray:
        """Coordinates of an FG vector's image in this section."""
        if self._solver is None:
            raise ValueError("abstract algebra has no ambient projection")
        return self._solver.solve(ambient_vec)

    def lift(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.uint8)
        return self.field.matmul(coords[None, :], self.reps)[0]

    def mul(self, x, y) -> np.ndarray:
        F = self.field
        x = np.asarray(x, dtype=np.uint8)
        y = np.asarray(y, dtype=np.uint8)
        T = F.matmul(x[None, :], self.sc.reshape(self.dim, -1))[0].reshape(self.dim, self.dim)
        return F.matmul(y[None, :], T)[0]

    def mul_batch(self, X, Y) -> np.ndarray:
        """Row-wise products of two (N, dim) coordinate batches."""
        F = self.field
        p, k = F.p, F.k
        X = np.asarray(X, dtype=np.uint8)
        Y = np.asarray(Y, dtype=np.uint8)
        d = self.dim
        if d == 0:
            return X.copy()
        # float64 einsums are exact here: all intermediates < 2^53
        if k == 1:
            Xi, Yi, sci = (a.astype(np.float64) for a in (X, Y, self.sc))
            out = np.rint(np.einsum("ni,nj,ijl->nl", Xi, Yi, sci, optimize=True)).astype(np.int64) % p
            return out.astype(np.uint8)
        Xd = F.DIG[X].astype(np.float64)
        Yd = F.DIG[Y].astype(np.float64)
        Sd = F.DIG[self.sc].astype(np.float64)
        acc = np.zeros((X.shape[0], d, 3 * k - 2), dtype=np.float64)
        for e1 in range(k):
            for e2 in range(k):
                for e3 in range(k):
                    acc[:, :, e1 + e2 + e3] += np.einsum(
                        "ni,nj,ijl->nl", Xd[..., e1], Yd[..., e2], Sd[..., e3], optimize=True)
        # fold digits >= k down through the modulus, highest first
        for e in range(3 * k - 3, k - 1, -1):
            acc[:, :, :k] += acc[:, :, e, None] * F.x_power_row(e)[None, None, :].astype(np.float64)
            acc[:, :, e] = 0
        codes = (np.rint(acc[:, :, :k]).astype(np.int64) % p) @ F.PW
        return codes.astype(np.uint8)

    def power_map_batch(self, X, pk_rounds: int) -> np.ndarray:
        """x -> x^(p^pk_rounds) applied to every row of X."""
        p = self.field.p
        out = np.asarray(X, dtype=np.uint8)
        for _ in range(pk_rounds):
            base = out
            acc = base
            for _ in range(p - 1):
                acc = self.mul_batch(acc, base)
            out = acc
        return out

    def power_subspace(self) -> "Subspace":
        """Span of all pairwise basis products (A^2 in coordinates)."""
        if "square" not in self._cache:
            d = self.dim
            self._cache["square"] = echelon_basis(
                [self.sc[i, j] for i in range(d) for j in range(d)], self.field, d)
        return self._cache["square"]

    def nilpotency_degree(self, bound: int = 64) -> int | None:
        """Least m with A^m = 0, or None if A is not nilpotent (unital case)."""
        full = echelon_basis(list(np.eye(self.dim, dtype=np.uint8)), self.field, self.dim)
        cur = full
        m = 1
        while cur.dim > 0 and m <= bound:
            nxt = EchelonBuilder(self.field, self.dim)
            for u in cur.rows:
                T = self.field.matmul(u[None, :], self.sc.reshape(self.dim, -1))[0] \
                    .reshape(self.dim, self.dim)
                for e in range(self.dim):
                    v = np.zeros(self.dim, dtype=np.uint8)
                    v[e] = 1
                    nxt.add(self.field.matmul(v[None, :], T)[0])
            new = nxt.freeze()
            if new.dim >= cur.dim:
                return None
            cur = new
            m += 1
        return m if cur.dim == 0 else None

    def __repr__(self):
        tag = f" {self.label}" if self.label else ""
        return f"QuotientAlgebra(dim={self.dim}, {self.field}{tag}, unital={self.unital})"


def quotient_algebra(A: GroupAlgebra, I: Ideal | None, J: Ideal | None, label="") -> QuotientAlgebra:
    """The section I/J as a structure-constant algebra (I=None means all of FG,
    giving a unital quotient FG/J; J=None means the zero ideal).

    The section basis is canonical: the echelon rows of I whose pivots are not
    pivots of J.
    """
    F = A.field
    if J is None:
        J = _zero_ideal(A)
    if I is None:
        carrier = echelon_basis([A.basis(g) for g in range(A.n)], F, A.n)
        unital = True
    else:
        carrier = I.space
        unital = False
    for row in J.space.rows:
        if not carrier.contains(row)[0]:
            raise ValueError("J is not contained in I")

    jpiv = set(J.space.pivots)
    reps = np.array([r for r, pv in zip(carrier.rows, carrier.pivots) if pv not in jpiv],
                    dtype=np.uint8)
    d = len(reps)
    assert d == carrier.dim - J.space.dim

    solver = TaggedEchelon(F, A.n, d)
    for row in J.space.rows:
        solver.add(row, np.zeros(d, dtype=np.uint8))
    for i in range(d):
        tag = np.zeros(d, dtype=np.uint8)
        tag[i] = 1
        solver.add(reps[i], tag)

    sc = np.zeros((d, d, d), dtype=np.uint8)
    for j in range(d):
        RM = A.right_mul_matrix(reps[j])
        prods = F.matmul(reps, RM)  # (d, n): rep_i * rep_j over all i
        for i in range(d):
            sc[i, j] = solver.solve(prods[i])

    unit = solver.solve(A.unit()) if unital else None
    return QuotientAlgebra(F, sc, reps=reps, solver=solver, unital=unital, unit=unit, label=label)


def radical_section(A: GroupAlgebra, i: int, j: int, label=None) -> QuotientAlgebra:
    """The section Δ^i / Δ^j (i < j)."""
    if not 1 <= i < j:
        raise ValueError("need 1 <= i < j")
    pows = augmentation_powers(A, n_max=j)
    J = pows[j - 1] if len(pows) >= j else _zero_ideal(A)
    I = pows[i - 1]
    return quotient_algebra(A, I, J, label=label or f"rad[{i},{j}]")


def _prime_restriction(Q: QuotientAlgebra) -> QuotientAlgebra:
    """The same algebra viewed over the prime subfield (dim multiplies by k)."""
    F = Q.field
    if F.k == 1:
        return Q
    if "prime_restriction" in Q._cache:
        return Q._cache["prime_restriction"]
    from .gfq import make_field
    Fp = make_field(F.p, 1)
    d, k = Q.dim, F.k
    gen_pows = [1]
    for _ in range(2 * k - 2):
        gen_pows.append(int(F.MUL[gen_pows[-1], F.p]))  # powers of the generator w
    sc_p = np.zeros((d * k, d * k, d * k), dtype=np.uint8)
    for e1 in range(k):
        for e2 in range(k):
            scale = gen_pows[e1 + e2]
            scaled = F.MUL[scale, Q.sc]  # (d, d, d) codes
            digits = F.DIG[scaled]  # (d, d, d, k)
            for e3 in range(k):
                sc_p[e1::k, e2::k, e3::k] = digits[..., e3]
    out = QuotientAlgebra(Fp, sc_p, label=f"{Q.label}|prime")
    Q._cache["prime_restriction"] = out
    return out


def _enumerate_coords(q: int, dim: int, chunk: int = 1 << 15):
    """Yield (m, dim) uint8 blocks covering all q^dim coordinate vectors, in
    mixed-radix order (last coordinate fastest)."""
    total = q**dim
    start = 0
    radix = np.array([q**(dim - 1 - i) for i in range(dim)], dtype=np.int64)
    while start < total:
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        out = (idx[:, None] // radix[None, :]) % q
        yield out.astype(np.uint8)
        start = stop


def kernel_size_power_map(Q: QuotientAlgebra, k: int, enum_cap: int = ENUM_CAP_DEFAULT):
    """(#elements with x^(p^k) = 0, #elements with x^(p^k) != 0), by exhaustive
    enumeration of the section."""
    P = _prime_restriction(Q)
    p, dim = P.field.p, P.dim
    if dim > 0 and p**dim > enum_cap:
        raise CapExceeded("enum_cap", f"{p}^{dim} elements exceed the enumeration cap")
    zero = 0
    total = p**dim
    for block in _enumerate_coords(p, dim):
        powered = P.power_map_batch(block, k)
        zero += int((~powered.any(axis=1)).sum())
    return zero, total - zero


def zassenhaus_ideal(A: GroupAlgebra, n: int, enum_cap: int = ENUM_CAP_DEFAULT) -> Ideal:
    """Z_n(FG): the sum over i * p^j >= n of the spans of p^j-th powers of the
    i-th Lie power ideal, plus Δ^(n+1); computed inside FG/Δ^(n+1) (legitimate
    because Z_n contains Δ^(n+1)) with the power images enumerated exhaustively.
    """
    F = A.field
    p = A.group.require_p_group()[0]
    pows = augmentation_powers(A, n_max=n + 1)
    Jnp1 = pows[n] if len(pows) > n else _zero_ideal(A)
    Q = quotient_algebra(A, None, Jnp1, label=f"mod-delta^{n + 1}")

    lies = lie_power_ideals(A)
    b = EchelonBuilder(F, Q.dim)
    for i, L in enumerate(lies, start=1):
        if L.dim == 0:
            break
        pj, j = 1, 0
        while True:
            if i * pj >= n:
                # image of the i-th Lie ideal inside Q
                img = EchelonBuilder(F, Q.dim)
                for row in L.space.rows:
                    img.add(Q.project(row))
                sect = img.freeze()
                if sect.dim > 0 and p**sect.dim > enum_cap:
                    raise CapExceeded(
                        "enum_cap",
                        f"Zassenhaus section of dim {sect.dim} over GF({F.q}) "
                        "exceeds the enumeration cap")
                Pq = _prime_restriction(Q)
                kq = F.k
                for block in _enumerate_coords(F.q, sect.dim):
                    coords = F.matmul(block, sect.rows) if sect.dim else np.zeros((1, Q.dim), np.uint8)
                    if kq > 1:
                        coords = F.DIG[coords].reshape(coords.shape[0], Q.dim * kq)
                    powered = Pq.power_map_batch(coords, j)
                    if kq > 1:
                        powered = (powered.reshape(-1, Q.dim, kq).astype(np.int64) @ F.PW).astype(np.uint8)
                    for row in np.unique(powered, axis=0):
                        b.add(row)
            if pj >= n:  # higher powers of anything in Δ land inside Δ^(n+1)
                break
            pj *= p
            j += 1
    span_q = b.freeze()

    out = EchelonBuilder(F, A.n)
    for row in Jnp1.space.rows:
        out.add(row)
    for row in span_q.rows:
        out.add(F.matmul(row[None, :], Q.reps)[0])
    return Ideal(A, out.freeze())


def small_group_ring(A: GroupAlgebra) -> QuotientAlgebra:
    """FG / (Δ(FG) · Δ(G')FG) as a unital structure-constant algebra."""
    from .groups import char_series
    F = A.field
    derived = char_series(A.group).derived
    rel = relative_augmentation_ideal(A, derived)
    delta = augmentation_ideal(A)
    b = EchelonBuilder(F, A.n)
    for v in rel.space.rows:
        RM = A.right_mul_matrix(v)
        for row in F.matmul(delta.space.rows, RM):
            b.add(row)
    K = Ideal(A, b.freeze())
    return quotient_algebra(A, None, K, label="small-group-ring")
