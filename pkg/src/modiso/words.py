"""Group presentations: a small word grammar and Todd-Coxeter coset enumeration.

Grammar (whitespace ignored):

    word   := term { '*' term }
    term   := factor [ '^' signed-integer ]
    factor := generator-name | '(' word ')' | '[' word ',' word ']'

The commutator bracket [x, y] expands to x^-1 * y^-1 * x * y before
enumeration. Words are stored fully expanded and freely reduced, as tuples of
signed 1-based generator numbers (-g means the inverse of generator g-1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, SpecParseError

EXPONENT_CAP = 1 << 20

Word = tuple  # of signed ints


def word_concat(*parts) -> Word:
    """Concatenate words with free reduction."""
    stack = []
    for part in parts:
        for x in part:
            if stack and stack[-1] == -x:
                stack.pop()
            else:
                stack.append(x)
    return tuple(stack)


def word_inverse(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def word_power(w: Word, e: int) -> Word:
    if e < 0:
        w, e = word_inverse(w), -e
    out: Word = ()
    for _ in range(e):
        out = word_concat(out, w)
    return out


def word_commutator(u: Word, v: Word) -> Word:
    return word_concat(word_inverse(u), word_inverse(v), u, v)


class _Parser:
    def __init__(self, text: str, gens):
        self.text = text
        self.pos = 0
        self.index = {name: i for i, name in enumerate(gens)}

    def error(self, message):
        raise SpecParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_word(self, closers=""):
        terms = []
        while True:
            c = self.peek()
            if c == "" or c in closers:
                break
            terms.append(self.parse_term())
            if self.peek() == "*":
                self.pos += 1
                if self.peek() == "" or self.peek() in closers:
                    self.error("dangling '*'")
            elif self.peek() not in ("",) and self.peek() not in closers:
                self.error("expected '*' between terms")
        return word_concat(*terms)

    def parse_term(self):
        base = self.parse_factor()
        if self.peek() == "^":
            self.pos += 1
            e = self.parse_int()
            return word_power(base, e)
        return base

    def parse_factor(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            w = self.parse_word(closers=")")
            self.expect(")")
            return w
        if c == "[":
            self.pos += 1
            u = self.parse_word(closers=",")
            self.expect(",")
            v = self.parse_word(closers="]")
            self.expect("]")
            return word_commutator(u, v)
        if c.isalpha() or c == "_":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start:self.pos]
            if name not in self.index:
                self.pos = start
                self.error(f"unknown generator {name!r}")
            return (self.index[name] + 1,)
        self.error("expected a generator, '(' or '['")

    def parse_int(self):
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.error("expected an integer exponent")
        value = int(self.text[start:self.pos])
        if abs(value) > EXPONENT_CAP:
            self.error(f"exponent overflow (|e| > {EXPONENT_CAP})")
        return value


def parse_word(text: str, gens) -> Word:
    """Parse text into a freely reduced word over the named generators."""
    p = _Parser(text, gens)
    w = p.parse_word()
    p.skip_ws()
    if p.pos != len(text):
        p.error("trailing input")
    return w


def print_word(w: Word, gens) -> str:
    """Inverse of parse_word on normal-form words (empty word prints as '')."""
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        g = abs(w[i]) - 1
        e = (j - i) if w[i] > 0 else -(j - i)
        parts.append(gens[g] if e == 1 else f"{gens[g]}^{e}")
        i = j
    return "*".join(parts)


@dataclass(frozen=True)
class Presentation:
    """A finite presentation; relators are words set equal to the identity."""

    generators: tuple
    relators: tuple  # of Words

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generator names must be unique")
        ngens = len(self.generators)
        for w in self.relators:
            for x in w:
                if not (1 <= abs(x) <= ngens):
                    raise ValueError(f"relator letter {x} out of range")

    @staticmethod
    def parse(generators, relator_texts) -> "Presentation":
        gens = tuple(generators)
        return Presentation(gens, tuple(parse_word(t, gens) for t in relator_texts))

    def relator_strings(self):
        return [print_word(w, self.generators) for w in self.relators]

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relators": self.relator_strings()}

    @staticmethod
    def from_json(data: dict) -> "Presentation":
        if not isinstance(data, dict) or "generators" not in data or "relators" not in data:
            raise SpecParseError("presentation JSON needs 'generators' and 'relators'")
        return Presentation.parse(data["generators"], data["relators"])

    @staticmethod
    def load(path) -> "Presentation":
        with open(path, encoding="utf-8") as fh:
            return Presentation.from_json(json.load(fh))


# -- Todd-Coxeter -------------------------------------------------------------

def _columns(w: Word):
    # generator g (1-based) acts via column 2(g-1); its inverse via 2(g-1)+1
    return [2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1 for x in w]


def todd_coxeter(P: Presentation, coset_cap: int = 100000):
    """Enumerate the cosets of the trivial subgroup (HLT with immediate
    coincidence handling) and return the resulting regular-action group.

    Deterministic: relators are scanned in declaration order and cosets
    processed in creation order, so the multiplication table is reproducible
    bit for bit.
    """
    from .groups import FiniteGroup

    ngens = len(P.generators)
    if ngens == 0:
        raise ValueError("empty generator list")
    if coset_cap < 1:
        raise ValueError("coset_cap must be >= 1")
    ncols = 2 * ngens
    rel_cols = [_columns(w) for w in P.relators]

    table = [[None] * ncols]
    rep = [0]
    queue = []

    def find(c):
        root = c
        while rep[root] != root:
            root = rep[root]
        while rep[c] != root:
            rep[c], c = root, rep[c]
        return root

    def define(a, x):
        if len(table) >= coset_cap:
            raise CapExceeded(
                "coset_cap",
                f"coset enumeration exceeded {coset_cap} cosets "
                "(presentation possibly infinite or cap too small)")
        b = len(table)
        table.append([None] * ncols)
        rep.append(b)
        table[a][x] = b
        table[b][x ^ 1] = a
        return b

    def merge(a, b):
        a, b = find(a), find(b)
        if a != b:
            a, b = min(a, b), max(a, b)
            rep[b] = a
            queue.append(b)

    def coincidence(a, b):
        merge(a, b)
        qi = 0
        while qi < len(queue):
            y = queue[qi]
            qi += 1
            row = table[y]
            for x in range(ncols):
                d = row[x]
                if d is None:
                    continue
                table[d][x ^ 1] = None
                mu, nu = find(y), find(d)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x])
                elif table[nu][x ^ 1] is not None:
                    merge(mu, table[nu][x ^ 1])
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu
        queue.clear()

    def scan_and_fill(a, cols):
        f, i = a, 0
        b, j = a, len(cols) - 1
        while True:
            while i <= j and table[f][cols[i]] is not None:
                f = table[f][cols[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][cols[j] ^ 1] is not None:
                b = table[b][cols[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if j == i:
                table[f][cols[i]] = b
                table[b][cols[i] ^ 1] = f
                return
            define(f, cols[i])

    alpha = 0
    while alpha < len(table):
        if find(alpha) == alpha:
            for cols in rel_cols:
                if cols:
                    scan_and_fill(alpha, cols)
                if find(alpha) != alpha:
                    break
            if find(alpha) == alpha:
                for x in range(ncols):
                    if table[alpha][x] is None:
                        define(alpha, x)
        alpha += 1

    live = [c for c in range(len(table)) if find(c) == c]
    index = {c: i for i, c in enumerate(live)}
    n = len(live)

    act = np.zeros((ncols, n), dtype=np.int32)
    for i, c in enumerate(live):
        for x in range(ncols):
            d = table[c][x]
            assert d is not None, "incomplete coset table"
            act[x, i] = index[find(d)]

    # closure sanity check: every relator traces to a cycle at every coset
    ar = np.arange(n)
    for cols in rel_cols:
        cur = ar
        for x in cols:
            cur = act[x][cur]
        assert np.array_equal(cur, ar), "relator does not close"

    # spanning tree in BFS order gives each element a defining word
    parent = np.full(n, -1, dtype=np.int64)
    parent_col = np.zeros(n, dtype=np.int64)
    order = [0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    qi = 0
    while qi < len(order):
        u = order[qi]
        qi += 1
        for x in range(ncols):
            v = int(act[x, u])
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                parent_col[v] = x
                order.append(v)
    assert seen.all(), "generators do not act transitively"

    mul = np.zeros((n, n), dtype=np.int32)
    mul[:, 0] = ar
    for v in order[1:]:
        mul[:, v] = act[parent_col[v]][mul[:, parent[v]]]

    words = [None] * n
    words[0] = ()
    for v in order[1:]:
        x = int(parent_col[v])
        letter = (x // 2 + 1) if x % 2 == 0 else -(x // 2 + 1)
        words[v] = words[int(parent[v])] + (letter,)

    gens = tuple(int(act[2 * g, 0]) for g in range(ngens))
    return FiniteGroup(mul, gens=gens, presentation=P, elem_words=tuple(words))
