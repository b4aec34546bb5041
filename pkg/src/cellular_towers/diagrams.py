"""Diagram bases and multiplication: Brauer, Temperley-Lieb, partition.

Vertices of an n-strand diagram are the ints 1..n (top row) and -1..-n
(bottom row).  A Brauer diagram is a perfect matching stored as a sorted
tuple of sorted pairs; a partition diagram is a set partition stored as a
sorted tuple of sorted blocks.  Elements are finitely supported coefficient
maps over Z[delta].

Composition stacks d1 over d2 (top of the product = top of d1), removing
closed middle components; each removed component contributes a factor
delta (Brauer) or one factor per removed block (partition).
"""

from __future__ import annotations

import itertools
from functools import cache

from .coeff import DELTA, DV, LaurentPoly
from .errors import DomainError
from .hecke import SymmetricGroupElement

DELTA_POLY = LaurentPoly.gen(DV, DELTA)
DONE = LaurentPoly.one(DV)


def _vkey(v):
    """Sort key putting tops 1..n before bottoms -1..-n."""
    return (0, v) if v > 0 else (1, -v)


def _canon_pairs(pairs):
    return tuple(sorted((tuple(sorted(p, key=_vkey)) for p in pairs), key=lambda p: _vkey(p[0])))


def _canon_blocks(blocks):
    return tuple(
        sorted((tuple(sorted(b, key=_vkey)) for b in blocks), key=lambda b: _vkey(b[0]))
    )


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry


class BrauerDiagram:
    """A perfect matching on {1..n, -1..-n}; canonical pair order."""

    __slots__ = ("n", "pairs", "_hash")

    def __init__(self, n, pairs):
        pairs = _canon_pairs(pairs)
        seen = [v for p in pairs for v in p]
        if sorted(seen) != sorted(list(range(-n, 0)) + list(range(1, n + 1))):
            raise DomainError(f"not a perfect matching on {n} strands: {pairs}")
        self.n = n
        self.pairs = pairs
        self._hash = None

    @classmethod
    def identity(cls, n):
        return cls(n, [(i, -i) for i in range(1, n + 1)])

    @classmethod
    def from_permutation(cls, w):
        """Permutation diagram: top i joined to bottom w(i)."""
        return cls(len(w), [(i, -w[i - 1]) for i in range(1, len(w) + 1)])

    @classmethod
    def s(cls, i, n):
        pairs = [(k, -k) for k in range(1, n + 1) if k not in (i, i + 1)]
        pairs += [(i, -(i + 1)), (i + 1, -i)]
        return cls(n, pairs)

    @classmethod
    def e(cls, i, n):
        pairs = [(k, -k) for k in range(1, n + 1) if k not in (i, i + 1)]
        pairs += [(i, i + 1), (-i, -(i + 1))]
        return cls(n, pairs)

    def compose(self, other):
        """Stack self above other; returns (diagram, closed-loop count)."""
        if self.n != other.n:
            raise DomainError("size mismatch")
        n = self.n
        # vertices: ('t', i) tops, ('m', i) middles, ('b', i) bottoms
        uf = _UnionFind(
            [("t", i) for i in range(1, n + 1)]
            + [("m", i) for i in range(1, n + 1)]
            + [("b", i) for i in range(1, n + 1)]
        )
        for a, b in self.pairs:
            uf.union(_up(a), _up(b))
        for a, b in other.pairs:
            uf.union(_down(a), _down(b))
        comp = {}
        for i in range(1, n + 1):
            for v in (("t", i), ("b", i)):
                comp.setdefault(uf.find(v), []).append(v)
        pairs = []
        for members in comp.values():
            if len(members) != 2:
                raise DomainError("composition did not produce a matching")
            pairs.append(tuple(_flat(v) for v in members))
        middles = {uf.find(("m", i)) for i in range(1, n + 1)}
        loops = len(middles - set(comp))
        return BrauerDiagram(n, pairs), loops

    def star(self):
        return BrauerDiagram(self.n, [(-a, -b) for a, b in self.pairs])

    def through_count(self):
        return sum(1 for a, b in self.pairs if a > 0 > b)

    def is_permutation(self):
        return self.through_count() == self.n

    def permutation(self):
        if not self.is_permutation():
            raise DomainError("not a permutation diagram")
        img = {a: -b for a, b in self.pairs}
        return tuple(img[i] for i in range(1, self.n + 1))

    def is_planar(self):
        """Crossing-free in the boundary order 1 < ... < n < -n < ... < -1."""
        order = {i: i for i in range(1, self.n + 1)}
        order.update({-i: 2 * self.n + 1 - i for i in range(1, self.n + 1)})
        spans = [tuple(sorted((order[a], order[b]))) for a, b in self.pairs]
        for (a1, b1), (a2, b2) in itertools.combinations(spans, 2):
            if a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1:
                return False
        return True

    def pad(self, n):
        """Add vertical strands to reach n strands."""
        extra = [(i, -i) for i in range(self.n + 1, n + 1)]
        return BrauerDiagram(n, self.pairs + tuple(extra))

    def __eq__(self, other):
        return (
            isinstance(other, BrauerDiagram)
            and self.n == other.n
            and self.pairs == other.pairs
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.pairs))
        return self._hash

    def __lt__(self, other):
        return self.pairs < other.pairs

    def __str__(self):
        return "|".join(f"{_pname(a)}{_pname(b)}" for a, b in self.pairs)

    __repr__ = __str__

    def key(self):
        return str(self)

    def to_json(self):
        return {"n": self.n, "pairs": [[_pname(a), _pname(b)] for a, b in self.pairs]}


def _up(v):
    return ("t", v) if v > 0 else ("m", -v)


def _down(v):
    return ("m", v) if v > 0 else ("b", -v)


def _flat(v):
    kind, i = v
    return i if kind == "t" else -i


def _pname(v):
    return f"p{v}" if v > 0 else f"q{-v}"


@cache
def brauer_basis(n):
    """All (n, n)-Brauer diagrams; cardinality (2n-1)!!."""
    verts = list(range(1, n + 1)) + list(range(-n, 0))
    verts.sort(key=_vkey)
    out = []

    def rec(rest, pairs):
        if not rest:
            out.append(BrauerDiagram(n, pairs))
            return
        a = rest[0]
        for k in range(1, len(rest)):
            b = rest[k]
            rec(rest[1:k] + rest[k + 1 :], pairs + [(a, b)])

    rec(verts, [])
    return tuple(sorted(out, key=lambda d: d.pairs))


@cache
def tl_basis(n):
    """Crossingless Brauer diagrams; cardinality Catalan(n)."""
    return tuple(d for d in brauer_basis(n) if d.is_planar())


# ---------------------------------------------------------------------------
# partition diagrams
# ---------------------------------------------------------------------------


class SetPartitionDiagram:
    """A set partition of {1..n, -1..-n}; canonical block order."""

    __slots__ = ("n", "blocks", "_hash")

    def __init__(self, n, blocks):
        blocks = _canon_blocks(blocks)
        seen = [v for b in blocks for v in b]
        if sorted(seen) != sorted(list(range(-n, 0)) + list(range(1, n + 1))):
            raise DomainError(f"not a set partition on {n} strands: {blocks}")
        self.n = n
        self.blocks = blocks
        self._hash = None

    @classmethod
    def identity(cls, n):
        return cls(n, [(i, -i) for i in range(1, n + 1)])

    @classmethod
    def from_permutation(cls, w):
        return cls(len(w), [(i, -w[i - 1]) for i in range(1, len(w) + 1)])

    @classmethod
    def t(cls, i, n):
        """The transposition diagram t_{s_i}."""
        blocks = [(k, -k) for k in range(1, n + 1) if k not in (i, i + 1)]
        blocks += [(i, -(i + 1)), (i + 1, -i)]
        return cls(n, blocks)

    @classmethod
    def p_int(cls, i, n):
        """p_i: singleton blocks at column i."""
        blocks = [(k, -k) for k in range(1, n + 1) if k != i]
        blocks += [(i,), (-i,)]
        return cls(n, blocks)

    @classmethod
    def p_half(cls, i, n):
        """p_{i+1/2}: one block covering columns i and i+1."""
        blocks = [(k, -k) for k in range(1, n + 1) if k not in (i, i + 1)]
        blocks += [(i, i + 1, -i, -(i + 1))]
        return cls(n, blocks)

    def compose(self, other):
        """Stack self above other; returns (diagram, removed middle blocks)."""
        if self.n != other.n:
            raise DomainError("size mismatch")
        n = self.n
        uf = _UnionFind(
            [("t", i) for i in range(1, n + 1)]
            + [("m", i) for i in range(1, n + 1)]
            + [("b", i) for i in range(1, n + 1)]
        )
        for b in self.blocks:
            for v in b[1:]:
                uf.union(_up(b[0]), _up(v))
        for b in other.blocks:
            for v in b[1:]:
                uf.union(_down(b[0]), _down(v))
        comp = {}
        for i in range(1, n + 1):
            for v in (("t", i), ("b", i)):
                comp.setdefault(uf.find(v), []).append(v)
        blocks = [tuple(_flat(v) for v in members) for members in comp.values()]
        middles = {uf.find(("m", i)) for i in range(1, n + 1)}
        removed = len(middles - set(comp))
        return SetPartitionDiagram(n, blocks), removed

    def star(self):
        return SetPartitionDiagram(self.n, [tuple(-v for v in b) for b in self.blocks])

    def propagating(self):
        return sum(1 for b in self.blocks if any(v > 0 for v in b) and any(v < 0 for v in b))

    def is_permutation(self):
        return all(len(b) == 2 for b in self.blocks) and self.propagating() == self.n

    def permutation(self):
        if not self.is_permutation():
            raise DomainError("not a permutation diagram")
        img = {}
        for b in self.blocks:
            a = [v for v in b if v > 0][0]
            img[a] = -[v for v in b if v < 0][0]
        return tuple(img[i] for i in range(1, self.n + 1))

    def half_level(self):
        """True when n and -n share a block (the P_{n-1/2} condition)."""
        blk = next(b for b in self.blocks if self.n in b)
        return -self.n in blk

    def pad(self, n):
        extra = [(i, -i) for i in range(self.n + 1, n + 1)]
        return SetPartitionDiagram(n, self.blocks + tuple(extra))

    def __eq__(self, other):
        return (
            isinstance(other, SetPartitionDiagram)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.blocks))
        return self._hash

    def __lt__(self, other):
        return self.blocks < other.blocks

    def __str__(self):
        return "|".join("".join(_pname(v) for v in b) for b in self.blocks)

    __repr__ = __str__

    def key(self):
        return str(self)

    def to_json(self):
        return {"n": self.n, "blocks": [[_pname(v) for v in b] for b in self.blocks]}


@cache
def partition_basis(n):
    """All set-partition diagrams on n strands; cardinality Bell(2n)."""
    verts = sorted(list(range(1, n + 1)) + list(range(-n, 0)), key=_vkey)
    out = []

    def rec(rest, blocks):
        if not rest:
            out.append(SetPartitionDiagram(n, blocks))
            return
        a, tail = rest[0], rest[1:]
        for i in range(len(blocks)):
            rec(tail, blocks[:i] + [blocks[i] + [a]] + blocks[i + 1 :])
        rec(tail, blocks + [[a]])

    rec(verts, [])
    return tuple(sorted(out, key=lambda d: d.blocks))


@cache
def half_level_basis(n):
    """Diagrams of P_{n-1/2}; cardinality Bell(2n-1)."""
    return tuple(d for d in partition_basis(n) if d.half_level())


def bell_number(k):
    b = [1]
    for _ in range(k):
        row = [b[-1]]
        for x in b:
            row.append(row[-1] + x)
        b = row
    return b[0] if k else 1


def catalan_number(k):
    out = 1
    for i in range(k):
        out = out * 2 * (2 * i + 1) // (i + 2)
    return out


def double_factorial_odd(n):
    """(2n-1)!! with the empty product for n = 0."""
    out = 1
    for k in range(1, 2 * n, 2):
        out *= k
    return out


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


class DiagramElement:
    """Finitely supported map diagram -> LaurentPoly in delta."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs=None):
        self.n = n
        self.coeffs = {d: c for d, c in (coeffs or {}).items() if c}

    @classmethod
    def from_diagram(cls, d, coeff=DONE):
        return cls(d.n, {d: coeff})

    @classmethod
    def one(cls, n, kind=BrauerDiagram):
        return cls(n, {kind.identity(n): DONE})

    def __add__(self, other):
        if not isinstance(other, DiagramElement) or other.n != self.n:
            return NotImplemented
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            s = out.get(d)
            s = c if s is None else s + c
            if s:
                out[d] = s
            else:
                out.pop(d, None)
        return DiagramElement(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, f):
        if not f:
            return DiagramElement(self.n)
        return DiagramElement(self.n, {d: c * f for d, c in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, DiagramElement):
            return self.scale(other)
        if other.n != self.n:
            raise DomainError("size mismatch")
        out = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d, loops = d1.compose(d2)
                c = c1 * c2 * DELTA_POLY ** loops if loops else c1 * c2
                s = out.get(d)
                s = c if s is None else s + c
                if s:
                    out[d] = s
                else:
                    out.pop(d, None)
        return DiagramElement(self.n, out)

    def __rmul__(self, other):
        if isinstance(other, DiagramElement):
            return NotImplemented
        return self.scale(other)

    def star(self):
        return DiagramElement(self.n, {d.star(): c for d, c in self.coeffs.items()})

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, DiagramElement)
            and self.n == other.n
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.n, tuple(sorted((str(d), c) for d, c in self.coeffs.items()))))

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*[{d}]" for d, c in sorted(self.coeffs.items(), key=lambda x: str(x[0])))

    __repr__ = __str__

    def to_json(self):
        return {
            "n": self.n,
            "terms": [
                {"diagram": d.to_json(), "coef": c.to_json()}
                for d, c in sorted(self.coeffs.items(), key=lambda x: str(x[0]))
            ],
        }


def quotient_to_symmetric(x):
    """Quotient map killing the contraction ideal.

    Brauer: diagrams with fewer than n through strands map to 0; partition:
    non-permutation diagrams map to 0.  Permutation diagrams map to their
    permutations; this is the identity on the symmetric-group subalgebra.
    """
    out = {}
    for d, c in x.coeffs.items():
        if d.is_permutation():
            w = d.permutation()
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return SymmetricGroupElement(x.n, out)


def symmetric_to_diagrams(g, kind=BrauerDiagram):
    """The section sending a group-algebra element to permutation diagrams."""
    out = {}
    for w, c in g.coeffs.items():
        out[kind.from_permutation(w)] = c
    return DiagramElement(g.n, out)
