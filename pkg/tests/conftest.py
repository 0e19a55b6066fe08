"""Shared test corpus.

Corpus membership is deliberate: the deep-chain groups C64/D64 are excluded so
that exhaustive power-map enumerations stay inside the default caps, and the
order-128 pair appears only where the algebra side is affordable.
"""

import pytest

from modiso.families import build, from_presentation

# 2-groups of order <= 32 plus the matching 3-groups; the shared corpus for
# the structural property suites
CORPUS_SMALL = [
    "C:2", "C:4", "C:8", "C:16", "C:32",
    "EA:2,2", "EA:2,3", "Ab:4,2", "Ab:4,4", "Ab:8,2",
    "D8", "Q8",
    "Meta:2,3,1,0,7",   # dihedral of order 16
    "Meta:2,3,1,1,7",   # generalized quaternion of order 16
    "Meta:2,3,1,0,3",   # semidihedral of order 16
    "Meta:2,3,1,0,5",   # modular of order 16
    "Meta:2,4,1,0,15",  # dihedral of order 32
    "Meta:2,4,1,1,15",  # generalized quaternion of order 32
    "B1G:1", "B1H:1", "B2G:1,2", "B2H:1,2",
    "X:C:2*D8", "X:C:2*Q8",
    "C:3", "C:9", "C:27",
    "EA:3,2", "EA:3,3", "Ab:9,3",
    "Meta:3,2,1,0,4",   # modular of order 27
    "HEIS27",
]

# additions for the radical-filtration suite (algebra side affordable to 128)
CORPUS_MEDIUM = CORPUS_SMALL + [
    "B2G:1,3", "B2H:1,3", "T:1,4", "T:2,4", "B2G:2,3", "B2H:2,3",
]

METACYCLIC_SPECS = [
    "C:4", "C:8", "C:16", "C:32", "C:64",
    "Ab:4,2", "Ab:8,2", "Ab:16,2", "Ab:4,4", "Ab:8,4",
    "D8", "Q8",
    "Meta:2,3,1,0,7", "Meta:2,3,1,1,7", "Meta:2,3,1,0,3", "Meta:2,3,1,0,5",
    "Meta:2,4,1,0,15", "Meta:2,4,1,1,15", "Meta:2,4,1,0,7", "Meta:2,4,1,0,9",
    "Meta:3,2,1,0,4", "Meta:3,3,1,0,10", "Meta:3,2,2,0,4",
]

NON_METACYCLIC_SPECS = [
    "EA:2,3", "EA:2,4", "EA:2,5", "EA:3,3", "Ab:9,3,3",
    "Ab:4,2,2", "Ab:8,2,2", "X:C:2*D8", "X:C:2*Q8",
    "X:C:2*Meta:2,3,1,0,5", "HEIS27",
]


def build_corpus_group(spec: str):
    if spec == "HEIS27":
        # extraspecial of order 27 and exponent 3
        return from_presentation(
            ("a", "b", "c"),
            ("a^3", "b^3", "[b,a]*c^-1", "c^3", "[c,a]", "[c,b]"),
            declared_order=27)
    return build(spec)


@pytest.fixture(scope="session")
def corpus_small():
    return [(spec, build_corpus_group(spec)) for spec in CORPUS_SMALL]


@pytest.fixture(scope="session")
def corpus_medium():
    return [(spec, build_corpus_group(spec)) for spec in CORPUS_MEDIUM]
