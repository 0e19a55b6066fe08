"""The invariant battery: assemble a Fingerprint of (G, F) and compare two
fingerprints.

Every entry of the Fingerprint is forced equal for groups with isomorphic
group algebras over the given field, so any difference between two
fingerprints certifies that the algebras are non-isomorphic. Entries whose
resource cap fired are recorded as Unavailable and excluded from comparison:
caps must never manufacture an indistinguishability claim.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .caps import DEFAULT_CAPS, Caps
from .errors import CapExceeded
from .gfq import FiniteField
from .groups import (
    FiniteGroup,
    abelian_type,
    agemo,
    char_series,
    conjugacy_classes,
    dimension_subgroups_lazard,
    exponent,
    jennings_ranks,
    max_elem_abelian_direct_factor,
    maximal_elem_abelian_classes,
    min_generators,
    omega,
    subgroup_intersection,
    subgroup_product,
)
from . import modalg


@dataclass(frozen=True)
class Unavailable:
    cap: str


TRANSFER_SECTION_NAMES = (
    "center_meet_pow_derived",          # Z(G) ∩ ℧_k(G)G'
    "center_mod_pow_derived",           # Z(G)℧_k(G)G' / ℧_k(G)G'
    "over_pow_center_derived",          # G / ℧_k(Z(G))G'
    "pow_center_derived_mod_derived",   # ℧_k(Z(G))G' / G'
    "over_tor_center_derived",          # G / Ω_k(Z(G))G'
    "tor_center_derived_mod_derived",   # Ω_k(Z(G))G' / G'
)


def hh1_dimension(G: FiniteGroup) -> int:
    """Dimension of the first Hochschild cohomology of FG: the sum over
    conjugacy classes of the minimal number of generators of the centralizer
    (a purely group-theoretic value, independent of the field size)."""
    G.require_p_group()
    total = 0
    seen = {}
    for c in conjugacy_classes(G):
        key = c.centralizer._key
        if key not in seen:
            seen[key] = min_generators(c.centralizer)
        total += seen[key]
    return total


def class_power_stats(G: FiniteGroup, k: int):
    """(number of distinct class power sets C^(p^k),
    number of classes with |C^(p^k)| = |C|)."""
    p, _ = G.require_p_group()
    pk = G.pow_map(p**k)
    distinct = set()
    preserving = 0
    for c in conjugacy_classes(G):
        power = frozenset(np.unique(pk[c.elems]).tolist())
        distinct.add(power)
        if len(power) == c.length:
            preserving += 1
    return len(distinct), preserving


def transfer_sections(G: FiniteGroup, k_max: int | None = None):
    """For k = 0..k_max, the types of the six invariant abelian sections built
    from Z(G), ℧_k, Ω_k, and G'. Default k_max: the least k with ℧_k(G) = 1."""
    p, _ = G.require_p_group()
    if k_max is None:
        k_max = 0
        while agemo(G, k_max).order > 1:
            k_max += 1
    cs = char_series(G)
    Z, derived = cs.center, cs.derived
    full = G.full_subgroup()
    out = []
    for k in range(k_max + 1):
        pow_derived = subgroup_product(agemo(G, k), derived)
        pow_center_derived = subgroup_product(agemo(Z, k), derived)
        tor_center_derived = subgroup_product(omega(Z, k), derived)
        row = {
            "center_meet_pow_derived": abelian_type(subgroup_intersection(Z, pow_derived)),
            "center_mod_pow_derived": abelian_type(subgroup_product(Z, pow_derived), pow_derived),
            "over_pow_center_derived": abelian_type(full, pow_center_derived),
            "pow_center_derived_mod_derived": abelian_type(pow_center_derived, derived),
            "over_tor_center_derived": abelian_type(full, tor_center_derived),
            "tor_center_derived_mod_derived": abelian_type(tor_center_derived, derived),
        }
        out.append(row)
    return out


@dataclass
class Fingerprint:
    field_spec: tuple  # (p, k)
    order: int
    abelianization: tuple
    center_type: tuple
    jennings_factors: list
    min_gens: int
    exponent: int
    nilpotency_class: int
    class_flags: dict
    class_power_stats: list  # [(k, distinct, preserving)]
    hh1_dim: int
    max_elem_ab_classes: object  # dict or Unavailable
    transfer_sections: list
    elem_ab_direct_factor_rank: object
    jennings_dims: object  # list or Unavailable
    kernel_sizes: list     # [{"section": (i, j), "power": k, "counts": (z, nz) | Unavailable}]
    small_group_ring_dim: object
    zassenhaus_dims: object


def fingerprint(G: FiniteGroup, F: FiniteField, caps: Caps = DEFAULT_CAPS) -> Fingerprint:
    p, _ = G.require_p_group()
    if p != F.p:
        raise ValueError(f"field characteristic {F.p} does not match group prime {p}")
    if G.n > caps.group_order_cap:
        raise CapExceeded("group_order_cap")

    cs = char_series(G)
    exp = exponent(G)
    e = 0
    while p**e < exp:
        e += 1

    ranks = jennings_ranks(G)
    flags = {
        "exponent_is_p": exp == p,
        "derived_cyclic": min_generators(cs.derived) <= 1,
        "class_two": cs.nilpotency_class == 2,
        "maximal_class": cs.nilpotency_class >= 2 and G.n == p**(cs.nilpotency_class + 1),
    }

    try:
        elemab = maximal_elem_abelian_classes(G, cap=caps.elemab_cap)
    except CapExceeded as err:
        elemab = Unavailable(err.cap_name)
    try:
        factor_rank = max_elem_abelian_direct_factor(G, cap=caps.direct_factor_cap)
    except CapExceeded as err:
        factor_rank = Unavailable(err.cap_name)

    jdims = Unavailable("algebra_order_cap")
    kernel = []
    sgr_dim = Unavailable("algebra_order_cap")
    zass = Unavailable("algebra_order_cap")
    if G.n <= caps.algebra_order_cap:
        A = modalg.group_algebra(G, F, order_cap=caps.algebra_order_cap)
        jdims = modalg.jennings_dims(A)
        sgr_dim = modalg.small_group_ring(A).dim
        if G.n <= caps.kernel_order_cap and F.q <= caps.kernel_q_cap:
            for (i, j, k) in caps.kernel_sections:
                try:
                    sect = modalg.radical_section(A, i, j)
                    counts = modalg.kernel_size_power_map(sect, k, enum_cap=caps.enum_cap)
                except CapExceeded as err:
                    counts = Unavailable(err.cap_name)
                kernel.append({"section": (i, j), "power": k, "counts": counts})
        else:
            kernel = [{"section": (i, j), "power": k, "counts": Unavailable("kernel_order_cap")}
                      for (i, j, k) in caps.kernel_sections]
        if F.k == 1 and G.n <= caps.zassenhaus_order_cap:
            D = dimension_subgroups_lazard(G)
            depth = max((n + 1 for n, S in enumerate(D) if S.order > 1), default=0)
            try:
                zass = [modalg.zassenhaus_ideal(A, n, enum_cap=caps.enum_cap).dim
                        for n in range(1, depth + 1)]
            except CapExceeded as err:
                zass = Unavailable(err.cap_name)
        elif F.k != 1:
            zass = Unavailable("prime_field_only")
        else:
            zass = Unavailable("zassenhaus_order_cap")
    else:
        kernel = [{"section": (i, j), "power": k, "counts": Unavailable("algebra_order_cap")}
                  for (i, j, k) in caps.kernel_sections]

    return Fingerprint(
        field_spec=(F.p, F.k),
        order=G.n,
        abelianization=abelian_type(G.full_subgroup(), cs.derived),
        center_type=abelian_type(cs.center),
        jennings_factors=[(p,) * r for r in ranks],
        min_gens=min_generators(G),
        exponent=exp,
        nilpotency_class=cs.nilpotency_class,
        class_flags=flags,
        class_power_stats=[(k,) + class_power_stats(G, k) for k in range(e + 1)],
        hh1_dim=hh1_dimension(G),
        max_elem_ab_classes=elemab,
        transfer_sections=transfer_sections(G),
        elem_ab_direct_factor_rank=factor_rank,
        jennings_dims=jdims,
        kernel_sizes=kernel,
        small_group_ring_dim=sgr_dim,
        zassenhaus_dims=zass,
    )


@dataclass
class Verdict:
    outcome: str  # "distinguished" | "indistinguishable"
    witnesses: list  # [(entry name, left, right)]
    compared: list   # entry names that were available on both sides
    notes: list = field(default_factory=list)

    @property
    def distinguished(self) -> bool:
        return self.outcome == "distinguished"


def compare(f: Fingerprint, g: Fingerprint) -> Verdict:
    """Compare every mutually available entry; any difference is a witness of
    non-isomorphism of the group algebras."""
    if f.field_spec != g.field_spec:
        raise ValueError("fingerprints over different fields are not comparable")
    witnesses = []
    compared = []
    notes = []

    def check(name, a, b):
        if isinstance(a, Unavailable) or isinstance(b, Unavailable):
            return
        compared.append(name)
        if a != b:
            witnesses.append((name, a, b))

    check("order", f.order, g.order)
    check("abelianization", f.abelianization, g.abelianization)
    check("center_type", f.center_type, g.center_type)
    check("jennings_factors", f.jennings_factors, g.jennings_factors)
    check("min_gens", f.min_gens, g.min_gens)
    check("exponent", f.exponent, g.exponent)
    check("hh1_dim", f.hh1_dim, g.hh1_dim)
    check("max_elem_ab_classes", f.max_elem_ab_classes, g.max_elem_ab_classes)
    check("elem_ab_direct_factor_rank", f.elem_ab_direct_factor_rank,
          g.elem_ab_direct_factor_rank)
    check("jennings_dims", f.jennings_dims, g.jennings_dims)
    check("small_group_ring_dim", f.small_group_ring_dim, g.small_group_ring_dim)
    check("zassenhaus_dims", f.zassenhaus_dims, g.zassenhaus_dims)

    for (ka, da, pa), (kb, db, pb) in zip(f.class_power_stats, g.class_power_stats):
        assert ka == kb
        check(f"class_power_stats[k={ka}]", (da, pa), (db, pb))

    for k, (ra, rb) in enumerate(zip(f.transfer_sections, g.transfer_sections)):
        for name in TRANSFER_SECTION_NAMES:
            check(f"transfer_sections[k={k}].{name}", ra[name], rb[name])

    ka = {(e["section"], e["power"]): e["counts"] for e in f.kernel_sizes}
    kb = {(e["section"], e["power"]): e["counts"] for e in g.kernel_sizes}
    for key in sorted(set(ka) & set(kb)):
        (i, j), k = key
        check(f"kernel_sizes[{i},{j},k={k}]", ka[key], kb[key])

    # nilpotency class is compared only when a licensing condition holds on
    # both sides (the licensing conditions are themselves invariant-checkable)
    licensed = (
        (f.class_flags["exponent_is_p"] and g.class_flags["exponent_is_p"])
        or (f.class_flags["derived_cyclic"] and g.class_flags["derived_cyclic"])
        or (f.class_flags["class_two"] and g.class_flags["class_two"])
        or (f.class_flags["maximal_class"] and g.class_flags["maximal_class"])
    )
    if licensed:
        check("nilpotency_class", f.nilpotency_class, g.nilpotency_class)
    else:
        asym = [name for name in f.class_flags
                if f.class_flags[name] != g.class_flags[name]]
        if asym:
            notes.append("nilpotency class not compared; asymmetric flags: "
                         + ", ".join(sorted(asym)))

    outcome = "distinguished" if witnesses else "indistinguishable"
    return Verdict(outcome=outcome, witnesses=witnesses, compared=compared, notes=notes)


# -- serialization ---------------------------------------------------------------

def _jsonable(value):
    if isinstance(value, Unavailable):
        return {"unavailable": value.cap}
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


def fingerprint_to_dict(fp: Fingerprint) -> dict:
    """Stable-key-order JSON form of a fingerprint."""
    return {
        "field": f"{fp.field_spec[0]}^{fp.field_spec[1]}" if fp.field_spec[1] > 1
                 else str(fp.field_spec[0]),
        "order": fp.order,
        "abelianization": _jsonable(fp.abelianization),
        "center_type": _jsonable(fp.center_type),
        "jennings_factors": _jsonable(fp.jennings_factors),
        "min_gens": fp.min_gens,
        "exponent": fp.exponent,
        "nilpotency_class": fp.nilpotency_class,
        "class_flags": _jsonable(fp.class_flags),
        "class_power_stats": [
            {"k": k, "distinct_powers": d, "size_preserving": pres}
            for (k, d, pres) in fp.class_power_stats],
        "hh1_dim": fp.hh1_dim,
        "max_elem_ab_classes": _jsonable(fp.max_elem_ab_classes),
        "transfer_sections": [
            {name: _jsonable(row[name]) for name in TRANSFER_SECTION_NAMES}
            for row in fp.transfer_sections],
        "elem_ab_direct_factor_rank": _jsonable(fp.elem_ab_direct_factor_rank),
        "jennings_dims": _jsonable(fp.jennings_dims),
        "kernel_sizes": [
            {"section": list(e["section"]), "power": e["power"],
             "counts": _jsonable(e["counts"] if isinstance(e["counts"], Unavailable)
                                 else list(e["counts"]))}
            for e in fp.kernel_sizes],
        "small_group_ring_dim": _jsonable(fp.small_group_ring_dim),
        "zassenhaus_dims": _jsonable(fp.zassenhaus_dims),
    }


def verdict_to_dict(v: Verdict) -> dict:
    return {
        "outcome": v.outcome,
        "witnesses": [{"entry": name, "left": _jsonable(a), "right": _jsonable(b)}
                      for (name, a, b) in v.witnesses],
        "compared": list(v.compared),
        "notes": list(v.notes),
    }


def jennings_polynomial(p: int, ranks) -> list:
    """Coefficients of ∏_n (1 + t^n + ... + t^((p-1)n))^(d_n) — the predicted
    dimensions of the radical-power sections Δ^w / Δ^(w+1)."""
    poly = [1]
    for n, d in enumerate(ranks, start=1):
        factor = [0] * ((p - 1) * n + 1)
        for t in range(p):
            factor[t * n] = 1
        for _ in range(d):
            out = [0] * (len(poly) + len(factor) - 1)
            for i, a in enumerate(poly):
                if a:
                    for j, b in enumerate(factor):
                        if b:
                            out[i + j] += a * b
            poly = out
    return poly


def predicted_jennings_dims(G: FiniteGroup) -> list:
    """Radical-section dimensions predicted from the group side alone."""
    p, _ = G.require_p_group()
    coeffs = jennings_polynomial(p, jennings_ranks(G))
    return coeffs[1:]
