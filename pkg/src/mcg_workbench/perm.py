"""Permutations of {0, ..., m-1} and the cycle/support combinatorics built on them.

Points are 0-based internally.  Text I/O uses 1-based cycle notation, e.g.
``(1 2)(3 5)``, with fixed points omitted.

Composition convention (fixed for the whole package)::

    compose(p, q)(x) == p(q(x))

so ``p * q`` means "apply q, then p".
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Perm",
    "CycleType",
    "compose",
    "cycle_type",
    "support",
    "fixed",
    "satisfies_braid",
    "centralizer_order_from_type",
    "parse_cycles",
    "format_cycles",
    "orbit_partition",
]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Perm:
    """An immutable permutation stored as its image tuple."""

    __slots__ = ("_images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images!r}")
        self._images = images
        self._hash = None

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> "Perm":
        p = object.__new__(cls)
        p._images = images
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int) -> "Perm":
        """Build from 0-based cycles."""
        img = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < degree:
                    raise ValueError(f"point {a} outside 0..{degree - 1}")
                if a in seen:
                    raise ValueError(f"point {a} occurs in two cycles")
                seen.add(a)
            for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
                img[a] = b
        return cls._trusted(tuple(img))

    @property
    def images(self) -> tuple[int, ...]:
        return self._images

    @property
    def degree(self) -> int:
        return len(self._images)

    def __call__(self, x: int) -> int:
        return self._images[x]

    def __len__(self) -> int:
        return len(self._images)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self._images == other._images

    def __lt__(self, other: "Perm") -> bool:
        return self._images < other._images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._images)
        return self._hash

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Perm":
        inv = [0] * len(self._images)
        for i, v in enumerate(self._images):
            inv[v] = i
        return Perm._trusted(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self._images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each rotated to start at its minimum, sorted by minimum."""
        seen = [False] * len(self._images)
        out = []
        for start in range(len(self._images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self._images[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = self._images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True))) if self.degree else 1

    def conjugate_by(self, x: "Perm") -> "Perm":
        """Return x * self * x^-1, i.e. relabel every point a as x(a)."""
        img = [0] * self.degree
        for a, b in enumerate(self._images):
            img[x(a)] = x(b)
        return Perm._trusted(tuple(img))

    def __repr__(self) -> str:
        return f"Perm({format_cycles(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        return format_cycles(self)


def compose(p: Perm, q: Perm) -> Perm:
    """(p o q)(x) = p(q(x))."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    pi = p.images
    return Perm._trusted(tuple(pi[j] for j in q.images))


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths; fixed points count as 1-cycles.

    ``counts[k]`` is the number of k-cycles.  Zero counts are dropped.
    """

    counts: Mapping[int, int]
    degree: int

    def __post_init__(self):
        clean = {int(k): int(v) for k, v in self.counts.items() if v}
        if any(k < 1 or v < 0 for k, v in clean.items()):
            raise ValueError(f"invalid cycle counts {dict(self.counts)!r}")
        if sum(k * v for k, v in clean.items()) != self.degree:
            raise ValueError(f"cycle counts {clean} do not sum to degree {self.degree}")
        object.__setattr__(self, "counts", dict(sorted(clean.items())))

    @classmethod
    def from_lengths(cls, lengths: Iterable[int]) -> "CycleType":
        lengths = list(lengths)
        return cls(Counter(lengths), sum(lengths))

    def __getitem__(self, k: int) -> int:
        return self.counts.get(k, 0)

    def __hash__(self) -> int:
        return hash((tuple(self.counts.items()), self.degree))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CycleType)
            and self.degree == other.degree
            and self.counts == other.counts
        )

    def lengths(self) -> Iterator[int]:
        """The lengths that occur (the set I(u))."""
        return iter(self.counts)

    def __str__(self) -> str:
        return "".join(f"({k})^{v}" for k, v in self.counts.items())


def cycle_type(p: Perm) -> CycleType:
    return CycleType.from_lengths(len(c) for c in p.cycles(include_fixed=True)) if p.degree else CycleType({}, 0)


def support(p: Perm) -> frozenset[int]:
    """S(p): the points moved by p."""
    return frozenset(i for i, v in enumerate(p.images) if i != v)


def fixed(p: Perm) -> frozenset[int]:
    """F(p): the points fixed by p."""
    return frozenset(i for i, v in enumerate(p.images) if i == v)


def satisfies_braid(u: Perm, v: Perm) -> bool:
    """True iff uvu = vuv."""
    if u.degree != v.degree:
        raise ValueError(f"degree mismatch: {u.degree} vs {v.degree}")
    ui, vi = u.images, v.images
    return all(ui[vi[ui[x]]] == vi[ui[vi[x]]] for x in range(len(ui)))


def centralizer_order_from_type(ct: CycleType) -> int:
    """|C_{S_m}(u)| for u of the given cycle type: prod_k k^l_k * l_k!."""
    order = 1
    for k, l in ct.counts.items():
        order *= k**l * math.factorial(l)
    return order


def parse_cycles(text: str, degree: int | None = None) -> Perm:
    """Parse 1-based cycle notation such as ``(1 2)(3 5 4)``.

    ``()`` or an empty string is the identity.  If ``degree`` is omitted the
    largest point mentioned is used.
    """
    stripped = _CYCLE_RE.sub("", text)
    if stripped.strip():
        raise ValueError(f"unexpected text outside cycles: {stripped.strip()!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        pts = body.replace(",", " ").split()
        if pts:
            cycles.append([int(t) - 1 for t in pts])
    top = max((max(c) for c in cycles), default=-1) + 1
    if degree is None:
        degree = top
    elif top > degree:
        raise ValueError(f"point {top} exceeds degree {degree}")
    return Perm.from_cycles(cycles, degree)


def format_cycles(p: Perm) -> str:
    """Canonical 1-based cycle notation; the identity prints as ``()``."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(a + 1) for a in c) + ")" for c in cycles)


def orbit_partition(perms: Sequence[Perm], degree: int) -> list[tuple[int, ...]]:
    """Orbits of <perms> on range(degree), each sorted, ordered by minimum."""
    parent = list(range(degree))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p in perms:
        if p.degree != degree:
            raise ValueError(f"degree mismatch: {p.degree} vs {degree}")
        for a, b in enumerate(p.images):
            ra, rb = find(a), find(b)
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
    blocks: dict[int, list[int]] = {}
    for a in range(degree):
        blocks.setdefault(find(a), []).append(a)
    return [tuple(b) for _, b in sorted(blocks.items())]
