"""Fingerprints: the full invariant battery of (G, F), and comparison."""

import json

from modiso import build, compare, fingerprint, make_field
from modiso.invariants import fingerprint_to_dict, verdict_to_dict

F2 = make_field(2, 1)
f = fingerprint(build("D8"), F2)
g = fingerprint(build("Q8"), F2)

print("dihedral fingerprint over GF(2):")
print(json.dumps(fingerprint_to_dict(f), indent=2)[:900], "...\n")

v = compare(f, g)
print("verdict:", v.outcome)
for name, left, right in v.witnesses:
    print(f"  {name}: {left} vs {right}")

# the ambiguous order-729 pair: every available entry agrees
F3 = make_field(3, 1)
v2 = compare(fingerprint(build("T:2,6"), F3), fingerprint(build("T:3,6"), F3))
print("\norder-729 series pair:", v2.outcome,
      f"({len(v2.compared)} entries compared)")
print(json.dumps(verdict_to_dict(v2)["notes"], indent=2))
