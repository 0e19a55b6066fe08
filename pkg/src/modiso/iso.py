"""Brute-force isomorphism decisions with explicit, independently verified
witnesses: generator-image search for small groups, and exhaustive
generator-assignment search for small nilpotent structure-constant algebras.

NotIsomorphic is only ever returned after a provably exhaustive search: all
pruning is by isomorphism invariants (element order, class size, section
dimensions), never heuristic.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded
from .gfq import EchelonBuilder, invert_matrix
from .groups import FiniteGroup, conjugacy_classes
from .modalg import QuotientAlgebra


@dataclass
class IsoWitness:
    kind: str              # "group" | "algebra"
    images: list           # per source generator: an H element index / a B coordinate vector
    source_gens: list      # the source generators (element indices / coordinate vectors)
    full_map: object = None


@dataclass
class NotIsomorphic:
    reason: str


def _class_size_of(G: FiniteGroup):
    sizes = np.zeros(G.n, dtype=np.int64)
    for c in conjugacy_classes(G):
        sizes[c.elems] = c.length
    return sizes


def _eval_letters(H: FiniteGroup, word, images):
    """Evaluate a word at generator images; images may be ints or candidate
    vectors (evaluation broadcasts)."""
    state = H.id
    mul, inv = H.mul, H.inv
    for x in word:
        img = images[abs(x) - 1]
        if x < 0:
            img = inv[img]
        state = mul[state, img]
    return state


def group_isomorphic(G: FiniteGroup, H: FiniteGroup, cap: int = 10**7):
    """Search for an isomorphism G -> H by assigning images to G's
    presentation generators, pruned by element order and class size.

    Generators that occur exactly once in some relator whose other letters are
    already assigned are deduced instead of searched. The returned witness is
    the lexicographically least accepting assignment; NotIsomorphic means the
    pruned search was exhausted.
    """
    if G.presentation is None:
        raise ValueError("source group must carry its defining presentation")
    if G.n != H.n:
        return NotIsomorphic("order mismatch")
    if Counter(G.element_orders().tolist()) != Counter(H.element_orders().tolist()):
        return NotIsomorphic("order-profile prune")
    g_sizes, h_sizes = _class_size_of(G), _class_size_of(H)
    g_orders, h_orders = G.element_orders(), H.element_orders()
    if (Counter(zip(g_orders.tolist(), g_sizes.tolist()))
            != Counter(zip(h_orders.tolist(), h_sizes.tolist()))):
        return NotIsomorphic("order/class-size profile prune")

    P = G.presentation
    ngens = len(P.generators)

    # decide which generators are deduced from a relator (single occurrence,
    # all other letters earlier) and which must be searched
    plan = []
    assigned = set()
    for t in range(ngens):
        deduction = None
        for w in P.relators:
            occ = [(pos, x) for pos, x in enumerate(w) if abs(x) - 1 == t]
            others_ok = all(abs(x) - 1 in assigned for x in w if abs(x) - 1 != t)
            if len(occ) == 1 and others_ok:
                deduction = (w, occ[0][0], 1 if occ[0][1] > 0 else -1)
                break
        if deduction is not None:
            plan.append(("deduce", t, deduction))
        else:
            plan.append(("search", t))
        assigned.add(t)

    pools = {}
    space = 1
    for step in plan:
        if step[0] != "search":
            continue
        t = step[1]
        g = G.gens[t]
        pool = np.nonzero((h_orders == int(g_orders[g])) & (h_sizes == int(g_sizes[g])))[0]
        if pool.size == 0:
            return NotIsomorphic("no candidate images for a generator")
        pools[t] = pool.astype(np.int32)
        space *= pool.size
    if space > cap:
        raise CapExceeded("iso_cap", f"search space {space} exceeds cap {cap}")

    searched = [step[1] for step in plan if step[0] == "search"]
    vector_gen = searched[-1] if searched else None

    def run(prefix_values, idx):
        if idx < len(searched) - 1:
            t = searched[idx]
            for h in pools[t].tolist():
                hit = run(prefix_values + [(t, h)], idx + 1)
                if hit is not None:
                    return hit
            return None
        # innermost searched generator is evaluated for its whole pool at once
        images = [None] * ngens
        for t, h in prefix_values:
            images[t] = h
        cands = pools[vector_gen] if vector_gen is not None else np.array([0], dtype=np.int32)
        if vector_gen is not None:
            images[vector_gen] = cands
        for step in plan:
            if step[0] == "deduce":
                t, (w, pos, sign) = step[1], step[2]
                pre = _eval_letters(H, w[:pos], images)
                suf = _eval_letters(H, w[pos + 1:], images)
                val = H.mul[H.inv[pre], H.inv[suf]]
                images[t] = H.inv[val] if sign < 0 else val
        ok = np.ones(cands.shape, dtype=bool)
        for w in P.relators:
            ok &= _eval_letters(H, w, images) == H.id
        for ci in np.nonzero(ok)[0].tolist():
            final = [int(im[ci]) if isinstance(im, np.ndarray) else int(im)
                     for im in images]
            if len(H.closure(final)) != H.n:
                continue
            w = IsoWitness(kind="group", images=final, source_gens=list(G.gens))
            if verify_witness(w, G, H):
                return w
            raise AssertionError("accepted assignment failed verification")
        return None

    hit = run([], 0)
    return hit if hit is not None else NotIsomorphic("exhausted")


# -- nilpotent algebra isomorphism ------------------------------------------------

def _monomial_basis(A: QuotientAlgebra, gens):
    """A basis of A made of monomials in the given generators (BFS by word
    length, then generator order), or None if they do not generate."""
    F = A.field
    d = A.dim
    basis = EchelonBuilder(F, d)
    keep_words, keep_vecs = [], []
    queue = [((i,), np.asarray(g, dtype=np.uint8)) for i, g in enumerate(gens)]
    qi = 0
    while qi < len(queue) and basis.dim < d:
        w, v = queue[qi]
        qi += 1
        if basis.add(v):
            keep_words.append(w)
            keep_vecs.append(v)
            for i, g in enumerate(gens):
                queue.append((w + (i,), A.mul(v, np.asarray(g, dtype=np.uint8))))
    if basis.dim != d:
        return None
    V = np.array(keep_vecs, dtype=np.uint8)
    return keep_words, V, invert_matrix(V, F)


def _algebra_generators(A: QuotientAlgebra):
    """Unit-vector generators of A modulo A^2, a monomial basis expressed as
    words in those generators, and the product tensor in that basis."""
    F = A.field
    d = A.dim
    sq = A.power_subspace()
    gens = []
    probe = sq.builder()
    for i in range(d):
        e = np.zeros(d, dtype=np.uint8)
        e[i] = 1
        if probe.add(e):
            gens.append(e)
    assert len(gens) == d - sq.dim
    mono = _monomial_basis(A, gens)
    if mono is None:
        raise ValueError("generators do not span (algebra not nilpotent?)")
    words, V, Vinv = mono
    # c[i, j] = coordinates of V_i * V_j in the V basis (x = coords @ V)
    c = np.zeros((d, d, d), dtype=np.uint8)
    for i in range(d):
        for j in range(d):
            c[i, j] = F.matmul(A.mul(V[i], V[j])[None, :], Vinv)[0]
    return gens, words, V, Vinv, c


def _lincomb_batch(F, coefs, U):
    """Sum_k coefs[k] * U[:, k, :] over the field; U has shape (N, d, dd)."""
    p, k = F.p, F.k
    if k == 1:
        return ((coefs.astype(np.int64)[None, :, None] * U).sum(axis=1) % p).astype(np.uint8)
    cd = F.DIG[coefs].astype(np.int64)  # (d, k)
    Ud = F.DIG[U].astype(np.int64)      # (N, d, dd, k)
    acc = np.zeros((U.shape[0], U.shape[2], 2 * k - 1), dtype=np.int64)
    for e1 in range(k):
        for e2 in range(k):
            acc[:, :, e1 + e2] += np.einsum("d,ndl->nl", cd[:, e1], Ud[..., e2])
    for e in range(2 * k - 2, k - 1, -1):
        acc[:, :, :k] += acc[:, :, e, None] * F.x_power_row(e)[None, None, :]
        acc[:, :, e] = 0
    return ((acc[:, :, :k] % p) @ F.PW).astype(np.uint8)


def nilpotent_algebra_iso(A: QuotientAlgebra, B: QuotientAlgebra, cap: int = 1 << 24):
    """Exhaustive isomorphism search between two nilpotent structure-constant
    algebras; the witness maps A's chosen generators to B elements."""
    if A.field is not B.field:
        raise ValueError("algebras over different fields")
    if A.unital or B.unital:
        raise ValueError("inputs must be non-unital (radical sections)")
    if A.nilpotency_degree() is None or B.nilpotency_degree() is None:
        raise ValueError("inputs must be nilpotent")
    if A.dim != B.dim:
        return NotIsomorphic("dimension mismatch")
    if A.power_subspace().dim != B.power_subspace().dim:
        return NotIsomorphic("square-dimension prune")
    F = A.field
    d = A.dim
    if d == 0:
        return IsoWitness(kind="algebra", images=[], source_gens=[])
    gens, words, V, Vinv, c = _algebra_generators(A)
    m = len(gens)
    if F.q ** (d * m) > cap:
        raise CapExceeded("iso_cap", f"{F.q}^{d * m} assignments exceed cap {cap}")

    total = F.q ** (d * m)
    chunk = 1 << 14
    radix = np.array([F.q ** (d * m - 1 - i) for i in range(d * m)], dtype=np.int64)
    start = 0
    while start < total:
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        flat = ((idx[:, None] // radix[None, :]) % F.q).astype(np.uint8)
        imgs = flat.reshape(-1, m, d)
        N = imgs.shape[0]
        # evaluate every monomial word at the candidate images
        U = np.zeros((N, d, d), dtype=np.uint8)
        for j, w in enumerate(words):
            val = imgs[:, w[0], :]
            for t in w[1:]:
                val = B.mul_batch(val, imgs[:, t, :])
            U[:, j, :] = val
        ok = np.ones(N, dtype=bool)
        for i in range(d):
            for j in range(d):
                lhs = _lincomb_batch(F, c[i, j], U)
                rhs = B.mul_batch(U[:, i, :], U[:, j, :])
                ok &= (lhs == rhs).all(axis=1)
                if not ok.any():
                    break
            if not ok.any():
                break
        for ci in np.nonzero(ok)[0].tolist():
            rank = EchelonBuilder(F, d)
            for row in U[ci]:
                rank.add(row)
            if rank.dim != d:
                continue
            w = IsoWitness(kind="algebra",
                           images=[imgs[ci, t, :].copy() for t in range(m)],
                           source_gens=[g.copy() for g in gens])
            assert verify_witness(w, A, B)
            return w
        start = stop
    return NotIsomorphic("exhausted")


def verify_witness(w: IsoWitness, source, target) -> bool:
    """Full independent check of a witness; never trusts the search."""
    if w.kind == "group":
        G, H = source, target
        if not isinstance(G, FiniteGroup) or not isinstance(H, FiniteGroup):
            raise ValueError("group witness needs two groups")
        if G.elem_words is None or len(w.images) != len(G.gens):
            raise ValueError("source group must carry element words")
        the_map = np.zeros(G.n, dtype=np.int64)
        for g in range(G.n):
            the_map[g] = _eval_letters(H, G.elem_words[g], w.images)
        w.full_map = the_map
        if sorted(the_map.tolist()) != list(range(H.n)):
            return False
        lhs = the_map[G.mul]
        rhs = H.mul[the_map[:, None], the_map[None, :]]
        return bool(np.array_equal(lhs, rhs))

    if w.kind == "algebra":
        A, B = source, target
        if A.dim != B.dim:
            return False
        d = A.dim
        if d == 0:
            return True
        F = A.field
        mono = _monomial_basis(A, w.source_gens)
        if mono is None:
            return False  # claimed source generators do not generate A
        words, V, Vinv = mono
        U = np.zeros((d, d), dtype=np.uint8)
        for j, word in enumerate(words):
            val = np.asarray(w.images[word[0]], dtype=np.uint8)
            for t in word[1:]:
                val = B.mul(val, np.asarray(w.images[t], dtype=np.uint8))
            U[j] = val
        # linear map on the standard basis: e_i -> coords_V(e_i) @ U
        M = F.matmul(Vinv, U)
        w.full_map = M
        rank = EchelonBuilder(F, d)
        for row in M:
            rank.add(row)
        if rank.dim != d:
            return False
        for i in range(d):
            for j in range(d):
                lhs = F.matmul(A.sc[i, j][None, :], M)[0]
                rhs = B.mul(M[i], M[j])
                if not np.array_equal(lhs, rhs):
                    return False
        return True

    raise ValueError(f"unknown witness kind {w.kind!r}")
