"""Resource caps. Every cap is overridable; fingerprint entries whose cap
fires are reported as unavailable rather than computed or guessed."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass


@dataclass(frozen=True)
class Caps:
    coset_cap: int = 100000
    q_cap: int = 81
    group_order_cap: int = 2187
    algebra_order_cap: int = 256
    enum_cap: int = 1 << 24
    elemab_cap: int = 10**6
    direct_factor_cap: int = 64
    kernel_order_cap: int = 32
    kernel_q_cap: int = 4
    zassenhaus_order_cap: int = 64
    iso_cap: int = 10**7
    kernel_sections: tuple = ((1, 2, 1), (1, 3, 1), (2, 3, 1), (1, 3, 2))

    @staticmethod
    def from_json(data: dict) -> "Caps":
        fields = {f.name for f in dataclasses.fields(Caps)}
        unknown = set(data) - fields
        if unknown:
            raise ValueError(f"unknown cap names: {sorted(unknown)}")
        if "kernel_sections" in data:
            data = dict(data)
            data["kernel_sections"] = tuple(tuple(x) for x in data["kernel_sections"])
        return Caps(**data)

    @staticmethod
    def load(path) -> "Caps":
        with open(path, encoding="utf-8") as fh:
            return Caps.from_json(json.load(fh))


DEFAULT_CAPS = Caps()
