"""Cayley-table group engine.

Groups are immutable multiplication tables on element indices 0..n-1; all
subgroup operators, characteristic series, and section invariants work on
index sets inside a parent group. Everything is deterministic: subgroups are
sorted index arrays, coset representatives are minimal indices, conjugacy
classes are ordered by least representative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded

ASSOC_EXHAUSTIVE_LIMIT = 512
ASSOC_SAMPLES = 100_000


def _is_prime_power(n: int):
    """(p, e) with n = p^e, or None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            return (p, e) if n == 1 else None
        p += 1
    return (n, 1)


class FiniteGroup:
    """A finite group as an n x n multiplication table of element indices."""

    def __init__(self, mul, gens=None, presentation=None, elem_words=None, labels=None):
        mul = np.asarray(mul, dtype=np.int32)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
            raise ValueError("multiplication table must be square")
        n = mul.shape[0]
        if n == 0 or mul.min() < 0 or mul.max() >= n:
            raise ValueError("table entries out of range")
        self.n = n
        self.mul = mul
        self.mul.setflags(write=False)

        ar = np.arange(n, dtype=np.int32)
        ids = [g for g in range(n) if np.array_equal(mul[g], ar) and np.array_equal(mul[:, g], ar)]
        if len(ids) != 1:
            raise ValueError("table has no unique identity")
        self.id = ids[0]

        ii, jj = np.nonzero(mul == self.id)
        inv = np.full(n, -1, dtype=np.int32)
        inv[ii] = jj
        if (inv < 0).any() or not np.array_equal(mul[inv, ar], np.full(n, self.id)):
            raise ValueError("some element has no two-sided inverse")
        self.inv = inv
        self.inv.setflags(write=False)

        self._check_associative()

        self.presentation = presentation
        self.elem_words = elem_words
        self._labels = labels
        self._cache = {}

        if gens is None:
            gens = self._greedy_generators()
        self.gens = tuple(int(g) for g in gens)
        if len(self.closure(self.gens)) != n:
            raise ValueError("distinguished generators do not generate the group")

    def _check_associative(self):
        mul, n = self.mul, self.n
        if n <= ASSOC_EXHAUSTIVE_LIMIT:
            for i in range(n):
                if not np.array_equal(mul[mul[i], :], mul[i][mul]):
                    raise ValueError("table is not associative")
        else:
            rng = np.random.default_rng(0)
            i, j, k = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
            if not np.array_equal(mul[mul[i, j], k], mul[i, mul[j, k]]):
                raise ValueError("table is not associative")

    def _greedy_generators(self):
        gens = []
        have = {self.id}
        for g in range(self.n):
            if g not in have:
                gens.append(g)
                have = set(self.closure(gens))
                if len(have) == self.n:
                    break
        return gens

    # -- element arithmetic ----------------------------------------------------

    def power(self, g: int, e: int) -> int:
        if e < 0:
            return self.power(int(self.inv[g]), -e)
        out, base = self.id, int(g)
        mul = self.mul
        while e:
            if e & 1:
                out = int(mul[out, base])
            base = int(mul[base, base])
            e >>= 1
        return out

    def word_image(self, word, images) -> int:
        """Evaluate a words-module word at the given generator images."""
        out = self.id
        mul, inv = self.mul, self.inv
        for x in word:
            img = images[abs(x) - 1]
            out = int(mul[out, img if x > 0 else inv[img]])
        return out

    def pow_map(self, e: int) -> np.ndarray:
        """The array g -> g^e over all elements."""
        key = ("pow_map", e)
        if key not in self._cache:
            ar = np.arange(self.n, dtype=np.int32)
            if e == 0:
                out = np.full(self.n, self.id, dtype=np.int32)
            elif e == 1:
                out = ar.copy()
            elif e % 2 == 0:
                h = self.pow_map(e // 2)
                out = self.mul[h, h]
            else:
                out = self.mul[self.pow_map(e - 1), ar]
            out.setflags(write=False)
            self._cache[key] = out
        return self._cache[key]

    def element_orders(self) -> np.ndarray:
        if "orders" not in self._cache:
            n = self.n
            ar = np.arange(n, dtype=np.int32)
            orders = np.zeros(n, dtype=np.int64)
            cur = ar.copy()
            k = 1
            while (orders == 0).any():
                hit = (cur == self.id) & (orders == 0)
                orders[hit] = k
                cur = self.mul[cur, ar]
                k += 1
                assert k <= n + 1
            orders.setflags(write=False)
            self._cache["orders"] = orders
        return self._cache["orders"]

    def conj_perm(self, g: int) -> np.ndarray:
        """The permutation x -> g^-1 x g."""
        return self.mul[self.mul[int(self.inv[g])], g]

    # -- subgroup plumbing -------------------------------------------------------

    def closure(self, seed) -> np.ndarray:
        """Sorted element set of the subgroup generated by the seed indices."""
        mul = self.mul
        member = np.zeros(self.n, dtype=bool)
        member[self.id] = True
        seed = np.unique(np.asarray(list(seed), dtype=np.int32))
        if seed.size == 0:
            return np.nonzero(member)[0].astype(np.int32)
        frontier = seed[~member[seed]]
        member[seed] = True
        while frontier.size:
            prods = np.unique(mul[np.ix_(frontier, seed)])
            frontier = prods[~member[prods]]
            member[prods] = True
        return np.nonzero(member)[0].astype(np.int32)

    def subgroup(self, elems) -> "Subgroup":
        return Subgroup(self, np.asarray(elems, dtype=np.int32))

    def generated(self, seed) -> "Subgroup":
        return Subgroup(self, self.closure(seed))

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, np.arange(self.n, dtype=np.int32))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, np.array([self.id], dtype=np.int32))

    def prime_power(self):
        return _is_prime_power(self.n)

    def require_p_group(self) -> tuple:
        pp = self.prime_power()
        if pp is None:
            raise ValueError(f"group of order {self.n} is not a p-group")
        return pp

    @property
    def labels(self):
        if self._labels is None:
            if self.elem_words is not None and self.presentation is not None:
                from .words import print_word
                gens = self.presentation.generators
                self._labels = tuple(print_word(w, gens) or "1" for w in self.elem_words)
            else:
                self._labels = tuple(str(i) for i in range(self.n))
        return self._labels

    def __repr__(self):
        return f"FiniteGroup(order={self.n})"


class Subgroup:
    """A subgroup as a sorted index set inside a parent FiniteGroup."""

    __slots__ = ("parent", "elems", "_member", "_key")

    def __init__(self, parent: FiniteGroup, elems):
        elems = np.unique(np.asarray(elems, dtype=np.int32))
        member = np.zeros(parent.n, dtype=bool)
        member[elems] = True
        if not member[parent.id]:
            raise ValueError("subgroup must contain the identity")
        prods = parent.mul[np.ix_(elems, elems)]
        if not member[prods].all() or not member[parent.inv[elems]].all():
            raise ValueError("element set is not closed")
        self.parent = parent
        self.elems = elems
        self.elems.setflags(write=False)
        self._member = member
        self._member.setflags(write=False)
        self._key = (id(parent), elems.tobytes())

    @property
    def order(self) -> int:
        return int(self.elems.size)

    def contains(self, g: int) -> bool:
        return bool(self._member[g])

    def contains_set(self, other: "Subgroup") -> bool:
        return bool(self._member[other.elems].all())

    def is_normal(self) -> bool:
        G = self.parent
        for g in G.gens:
            if not self._member[G.conj_perm(g)[self.elems]].all():
                return False
        return True

    def conjugate_by(self, g: int) -> "Subgroup":
        return Subgroup(self.parent, self.parent.conj_perm(g)[self.elems])

    def as_group(self):
        """This subgroup as a standalone FiniteGroup plus the index embedding."""
        G = self.parent
        local = np.full(G.n, -1, dtype=np.int32)
        local[self.elems] = np.arange(self.order, dtype=np.int32)
        table = local[G.mul[np.ix_(self.elems, self.elems)]]
        gens = [int(local[g]) for g in _greedy_subgroup_gens(self)]
        return FiniteGroup(table, gens=gens), self.elems

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Subgroup(order={self.order} in {self.parent})"


def _greedy_subgroup_gens(S: Subgroup):
    G = S.parent
    gens = []
    have = {G.id}
    for g in S.elems.tolist():
        if g not in have:
            gens.append(g)
            have = set(G.closure(gens))
            if len(have) == S.order:
                break
    return gens or [G.id]


# -- spec operations ----------------------------------------------------------

def subgroup_generated(G: FiniteGroup, seed) -> Subgroup:
    return G.generated(seed)


def subgroup_product(A: Subgroup, B: Subgroup) -> Subgroup:
    """The set product AB (requires A or B normal so that AB is a subgroup)."""
    G = A.parent
    assert B.parent is G
    prods = np.unique(G.mul[np.ix_(A.elems, B.elems)])
    S = Subgroup(G, prods)
    assert S.order * _intersection_order(A, B) == A.order * B.order
    return S


def _intersection_order(A: Subgroup, B: Subgroup) -> int:
    return int((A._member & B._member).sum())


def subgroup_intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    assert A.parent is B.parent
    return Subgroup(A.parent, np.nonzero(A._member & B._member)[0])


def commutator_subgroup(A: Subgroup, B: Subgroup) -> Subgroup:
    """⟨[a,b] : a in A, b in B⟩."""
    G = A.parent
    mul, inv = G.mul, G.inv
    a = A.elems[:, None]
    b = B.elems[None, :]
    comms = mul[mul[inv[a], inv[b]], mul[a, b]]
    return G.generated(np.unique(comms))


def center(G: FiniteGroup) -> Subgroup:
    if "center" not in G._cache:
        mask = (G.mul == G.mul.T).all(axis=1)
        G._cache["center"] = Subgroup(G, np.nonzero(mask)[0])
    return G._cache["center"]


def centralizer(G: FiniteGroup, g: int) -> Subgroup:
    mask = G.mul[g] == G.mul[:, g]
    return Subgroup(G, np.nonzero(mask)[0])


def agemo(X, k: int) -> Subgroup:
    """℧_k: the subgroup generated by p^k-th powers (of a group or subgroup)."""
    G, elems = _unpack(X)
    p, _ = G.require_p_group()
    powers = G.pow_map(p**k)[elems]
    return G.generated(np.unique(powers))


def omega(X, k: int) -> Subgroup:
    """Ω_k: generated by the elements of order dividing p^k."""
    G, elems = _unpack(X)
    p, _ = G.require_p_group()
    pk = G.pow_map(p**k)[elems]
    return G.generated(elems[pk == G.id])


def omega_in(G: FiniteGroup, N: Subgroup, k: int) -> Subgroup:
    """Ω_k(G:N): generated by the g whose p^k-th power lies in N."""
    p, _ = G.require_p_group()
    if N.parent is not G:
        raise ValueError("N is not a subgroup of G")
    if not N.is_normal():
        raise ValueError("N must be normal in G")
    pk = G.pow_map(p**k)
    return G.generated(np.nonzero(N._member[pk])[0])


def agemo_omega(G: FiniteGroup, N, k: int, mode: str) -> Subgroup:
    if mode == "agemo":
        return agemo(G, k)
    if mode == "omega":
        return omega(G, k)
    if mode == "omega_rel":
        return omega_in(G, N, k)
    raise ValueError(f"unknown mode {mode!r}")


def _unpack(X):
    if isinstance(X, FiniteGroup):
        return X, np.arange(X.n, dtype=np.int32)
    return X.parent, X.elems


@dataclass(frozen=True)
class CharSeries:
    lower_central: list  # γ_1 = G down to the first trivial term
    derived: Subgroup
    center: Subgroup
    frattini: Subgroup
    nilpotency_class: int


def char_series(G: FiniteGroup) -> CharSeries:
    if "char_series" not in G._cache:
        p, _ = G.require_p_group()
        full = G.full_subgroup()
        lc = [full]
        while lc[-1].order > 1:
            lc.append(commutator_subgroup(lc[-1], full))
        derived = lc[1] if len(lc) > 1 else lc[0]
        frat = G.generated(np.unique(np.concatenate([
            G.pow_map(p)[np.arange(G.n)], derived.elems])))
        G._cache["char_series"] = CharSeries(
            lower_central=lc,
            derived=derived,
            center=center(G),
            frattini=frat,
            nilpotency_class=len(lc) - 1,
        )
    return G._cache["char_series"]


def quotient_group(G: FiniteGroup, N: Subgroup):
    """(G/N as a FiniteGroup, projection array G -> G/N)."""
    if not N.is_normal():
        raise ValueError("subgroup is not normal")
    Q, proj, _ = _section(G.full_subgroup(), N)
    return Q, proj


def section_group(X: Subgroup, Y: Subgroup | None = None):
    """The quotient X/Y as a standalone group (Y normal in X; Y=None means trivial)."""
    if Y is None:
        Y = X.parent.trivial_subgroup()
    Q, _, _ = _section(X, Y)
    return Q


def _section(X: Subgroup, Y: Subgroup):
    G = X.parent
    if Y.parent is not G or not X.contains_set(Y):
        raise ValueError("Y must be a subgroup of X")
    xgens = G.gens if X.order == G.n else _greedy_subgroup_gens(X)
    for x in xgens:
        if not Y._member[G.conj_perm(x)[Y.elems]].all():
            raise ValueError("Y is not normal in X")

    # coset of x is represented by its minimal element
    cosets = G.mul[np.ix_(X.elems, Y.elems)]
    rep_of = np.full(G.n, -1, dtype=np.int32)
    reps_sorted = []
    seen = np.zeros(G.n, dtype=bool)
    for i, x in enumerate(X.elems.tolist()):
        if not seen[x]:
            cs = cosets[i]
            r = int(cs.min())
            rep_of[cs] = r
            seen[cs] = True
            reps_sorted.append(r)
    reps_sorted.sort()
    reps = np.array(reps_sorted, dtype=np.int32)
    local = np.full(G.n, -1, dtype=np.int32)
    local[reps] = np.arange(len(reps), dtype=np.int32)

    table = local[rep_of[G.mul[np.ix_(reps, reps)]]]
    proj = np.full(G.n, -1, dtype=np.int32)
    proj[X.elems] = local[rep_of[X.elems]]
    gens = sorted(set(int(local[rep_of[g]]) for g in _greedy_subgroup_gens(X)))
    Q = FiniteGroup(table, gens=gens)
    assert Q.n * Y.order == X.order
    return Q, proj, reps


@dataclass(frozen=True)
class ConjClass:
    rep: int
    elems: np.ndarray
    length: int
    centralizer: Subgroup


def conjugacy_classes(G: FiniteGroup):
    """Classes in order of least representative, with centralizers."""
    if "classes" not in G._cache:
        n = G.n
        mul, inv = G.mul, G.inv
        ar = np.arange(n, dtype=np.int32)
        seen = np.zeros(n, dtype=bool)
        out = []
        for g in range(n):
            if seen[g]:
                continue
            cls = np.unique(mul[mul[inv, g], ar])
            seen[cls] = True
            cent = centralizer(G, g)
            assert len(cls) * cent.order == n
            out.append(ConjClass(rep=g, elems=cls, length=len(cls), centralizer=cent))
        assert sum(c.length for c in out) == n
        G._cache["classes"] = out
    return G._cache["classes"]


def abelian_type(X, Y: Subgroup | None = None) -> tuple:
    """Invariant-factor type of an abelian p-group or abelian section X/Y,
    recovered from the orders of the subgroups Ω_k.
    """
    if isinstance(X, FiniteGroup):
        Q = X
    else:
        Q = section_group(X, Y)
    if Q.n == 1:
        return ()
    p, e = Q.require_p_group()
    if not (Q.mul == Q.mul.T).all():
        raise ValueError("section is not abelian")
    logs = [0]
    k = 0
    while p**logs[-1] < Q.n:
        k += 1
        cnt = int((Q.pow_map(p**k) == Q.id).sum())
        lg = round(np.log(cnt) / np.log(p))
        assert p**lg == cnt
        logs.append(lg)
    ge = [logs[k] - logs[k - 1] for k in range(1, len(logs))]  # #parts with exponent >= k
    ge.append(0)
    parts = []
    for k in range(1, len(ge)):
        parts.extend([p**k] * (ge[k - 1] - ge[k]))
    parts.sort(reverse=True)
    assert (int(np.prod(parts)) if parts else 1) == Q.n
    return tuple(parts)


def dimension_subgroups_lazard(G: FiniteGroup, n_max: int | None = None):
    """Jennings series by Lazard's product formula:
    D_n = ∏ ℧_j(γ_i) over i * p^j >= n.

    Returns [D_1, D_2, ...]; without n_max the list ends at the first trivial
    term.
    """
    p, _ = G.require_p_group()
    lc = char_series(G).lower_central
    out = []
    n = 1
    while True:
        seeds = [np.array([G.id], dtype=np.int32)]
        for i, gamma in enumerate(lc, start=1):
            if gamma.order == 1:
                break
            pj, j = 1, 0
            while i * pj < n:
                pj *= p
                j += 1
            seeds.append(G.pow_map(pj)[gamma.elems])
        Dn = G.generated(np.unique(np.concatenate(seeds)))
        out.append(Dn)
        if n_max is not None and n >= n_max:
            break
        if n_max is None and Dn.order == 1:
            break
        n += 1
    return out


def jennings_ranks(G: FiniteGroup):
    """Ranks of the elementary abelian factors D_n/D_{n+1}."""
    p, _ = G.require_p_group()
    D = dimension_subgroups_lazard(G)
    if D[-1].order != 1:
        D = D + [G.trivial_subgroup()]
    ranks = []
    for a, b in zip(D, D[1:]):
        q = a.order // b.order
        r = round(np.log(q) / np.log(p))
        assert p**r == q
        ranks.append(r)
    while ranks and ranks[-1] == 0:
        ranks.pop()
    return ranks


def min_generators(X) -> int:
    """Rank of X/Frat(X) (minimal number of generators of a p-group)."""
    G, elems = _unpack(X)
    if elems.size == 1:
        return 0
    p, _ = G.require_p_group()
    S = X if isinstance(X, Subgroup) else G.full_subgroup()
    derived = commutator_subgroup(S, S)
    frat_elems = G.closure(np.concatenate([G.pow_map(p)[elems], derived.elems]))
    index = elems.size // len(frat_elems)
    r = round(np.log(index) / np.log(p))
    assert p**r == index
    return r


def exponent(G: FiniteGroup) -> int:
    orders = G.element_orders()
    out = int(orders[0])
    for o in orders.tolist():
        out = out * o // int(np.gcd(out, o))
    return out


def is_metacyclic(G: FiniteGroup):
    """(True, witness cyclic normal subgroup with cyclic quotient) or (False, None)."""
    seen = set()
    candidates = []
    for g in range(G.n):
        S = G.generated([g])
        if S._key not in seen:
            seen.add(S._key)
            candidates.append(S)
    candidates.sort(key=lambda S: (-S.order, S.elems.tolist()))
    for S in candidates:
        if not S.is_normal():
            continue
        Q, _ = quotient_group(G, S)
        if exponent(Q) == Q.n:
            return True, S
    return False, None


def maximal_elem_abelian_classes(G: FiniteGroup, cap: int = 10**6) -> dict:
    """rank -> number of conjugacy classes of maximal elementary abelian subgroups."""
    p, _ = G.require_p_group()
    mul = G.mul
    order_p = np.nonzero((G.pow_map(p) == G.id) & (np.arange(G.n) != G.id))[0].astype(np.int32)

    def commuting_mask(elems):
        return (mul[:, elems] == mul[elems, :].T).all(axis=1)

    trivial = (G.id,)
    level = {trivial}
    visited = {trivial}
    maximal = []
    while level:
        nxt = set()
        for key in sorted(level):
            elems = np.array(key, dtype=np.int32)
            mask = commuting_mask(elems)
            ext = order_p[mask[order_p]]
            ext = ext[~np.isin(ext, elems)]
            if ext.size == 0:
                if key != trivial or order_p.size == 0:
                    maximal.append(key)
                continue
            for y in ext.tolist():
                # extension of an elementary abelian set by a commuting order-p
                # element: the closure is the set product with <y>
                new = elems
                acc = [elems]
                for _ in range(p - 1):
                    new = mul[new, y]
                    acc.append(new)
                child = tuple(sorted(np.concatenate(acc).tolist()))
                if child not in visited:
                    if len(visited) >= cap:
                        raise CapExceeded("elemab_cap")
                    visited.add(child)
                    nxt.add(child)
        level = nxt

    # conjugacy classes of the maximal ones
    classes = {}
    assigned = {}
    for key in sorted(maximal):
        if key in assigned:
            continue
        orbit = {key}
        frontier = [key]
        while frontier:
            cur = frontier.pop()
            arr = np.array(cur, dtype=np.int32)
            for g in G.gens:
                img = tuple(sorted(G.conj_perm(g)[arr].tolist()))
                if img not in orbit:
                    orbit.add(img)
                    frontier.append(img)
        rank = round(np.log(len(key)) / np.log(p))
        assert p**rank == len(key)
        for s in orbit:
            assigned[s] = key
        classes[rank] = classes.get(rank, 0) + 1
    return dict(sorted(classes.items()))


def max_elem_abelian_direct_factor(G: FiniteGroup, cap: int = 64) -> int:
    """Rank of the largest elementary abelian direct factor of G.

    A central elementary abelian subgroup A splits off as a direct factor
    exactly when A ∩ Frat(G) = 1 (pull back a complement of its image in
    G/Frat(G)), so the answer is dim Ω_1(Z(G)) - dim(Ω_1(Z(G)) ∩ Frat(G)).
    """
    p, _ = G.require_p_group()
    if G.n > cap:
        raise CapExceeded("direct_factor_cap")
    Z = center(G)
    om = omega(Z, 1)
    frat = char_series(G).frattini
    inter = _intersection_order(om, frat)
    r = round(np.log(om.order // inter) / np.log(p))
    assert p**r == om.order // inter
    return r
