"""Permutation groups given by named generators.

A :class:`PermRep` is an ordered map ``generator name -> Perm`` of fixed
degree.  Two representations are *equivalent* when one permutation ``x``
conjugates every generator image of the first onto the image of the same
name in the second: ``x * a[T] * x^-1 == b[T]``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .perm import CycleType, Perm, cycle_type, format_cycles, orbit_partition, parse_cycles

__all__ = [
    "PermRep",
    "StabChain",
    "SearchBudgetExceeded",
    "orbits",
    "group_order",
    "is_transitive",
    "centralizing_elements",
    "are_equivalent",
    "DEFAULT_MAX_DEGREE",
    "DEFAULT_NODE_BUDGET",
]

# Backtrack defaults; callers may raise both explicitly.
DEFAULT_MAX_DEGREE = 64
DEFAULT_NODE_BUDGET = 2_000_000


class SearchBudgetExceeded(RuntimeError):
    """A backtrack search visited more nodes than its budget allows."""


@dataclass(frozen=True)
class PermRep:
    degree: int
    generators: tuple[tuple[str, Perm], ...]
    metadata: Mapping = field(default_factory=dict, compare=False)

    def __post_init__(self):
        gens = tuple((str(n), p) for n, p in self.generators)
        names = [n for n, _ in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for n, p in gens:
            if p.degree != self.degree:
                raise ValueError(f"generator {n} has degree {p.degree}, expected {self.degree}")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_mapping(cls, images: Mapping[str, Perm], degree: int | None = None, **metadata) -> "PermRep":
        if degree is None:
            degree = next(iter(images.values())).degree if images else 0
        return cls(degree, tuple(images.items()), metadata)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.generators)

    @property
    def perms(self) -> tuple[Perm, ...]:
        return tuple(p for _, p in self.generators)

    def as_dict(self) -> dict[str, Perm]:
        return dict(self.generators)

    def __getitem__(self, name: str) -> Perm:
        for n, p in self.generators:
            if n == name:
                return p
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def restrict(self, names: Iterable[str]) -> "PermRep":
        """Keep only the named generators, in the given order."""
        d = self.as_dict()
        return PermRep(self.degree, tuple((n, d[n]) for n in names), dict(self.metadata))

    def rename(self, mapping: Mapping[str, str]) -> "PermRep":
        return PermRep(
            self.degree,
            tuple((mapping.get(n, n), p) for n, p in self.generators),
            dict(self.metadata),
        )

    def conjugate_by(self, x: Perm) -> "PermRep":
        """The representation T -> x * rep[T] * x^-1."""
        return PermRep(
            self.degree,
            tuple((n, p.conjugate_by(x)) for n, p in self.generators),
            dict(self.metadata),
        )

    def on_block(self, block: Sequence[int]) -> "PermRep":
        """Induced action on an invariant block; point block[i] becomes i."""
        index = {a: i for i, a in enumerate(block)}
        gens = []
        for n, p in self.generators:
            try:
                gens.append((n, Perm._trusted(tuple(index[p(a)] for a in block))))
            except KeyError:
                raise ValueError(f"block is not invariant under {n}") from None
        return PermRep(len(block), tuple(gens))

    # -- JSON interchange ------------------------------------------------

    def to_json_dict(self) -> dict:
        doc = {
            "degree": self.degree,
            "generators": [{"name": n, "cycles": format_cycles(p)} for n, p in self.generators],
        }
        if self.metadata:
            doc["metadata"] = dict(self.metadata)
        return doc

    @classmethod
    def from_json_dict(cls, doc: Mapping) -> "PermRep":
        degree = int(doc["degree"])
        gens = tuple((g["name"], parse_cycles(g["cycles"], degree)) for g in doc["generators"])
        return cls(degree, gens, dict(doc.get("metadata", {})))

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "PermRep":
        return cls.from_json_dict(json.loads(text))

    @classmethod
    def load(cls, path: str | Path) -> "PermRep":
        return cls.from_json(Path(path).read_text())


def orbits(rep: PermRep) -> list[tuple[int, ...]]:
    """Orbits of the generated group, each sorted, ordered by least point."""
    return orbit_partition(rep.perms, rep.degree)


def is_transitive(rep: PermRep) -> bool:
    return len(orbits(rep)) <= 1


# ---------------------------------------------------------------------------
# Stabilizer chain (deterministic Schreier-Sims)
# ---------------------------------------------------------------------------


class StabChain:
    """Base and strong generating set built by deterministic Schreier-Sims.

    New base points are the least point moved by the element that needs
    them; Schreier generators are processed in orbit order and generator
    order, and transversals are only ever extended, so the chain (and any
    failure) is reproducible run to run.
    """

    def __init__(self, generators: Sequence[Perm], degree: int):
        self.degree = degree
        self._identity = Perm.identity(degree)
        self.base: list[int] = []
        self.gens: list[list[Perm]] = []
        self.transversals: list[dict[int, Perm]] = []
        self._orbit: list[list[int]] = []
        self._done: list[set[tuple[int, int]]] = []
        gens = []
        for g in generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
            if not g.is_identity() and g not in gens:
                gens.append(g)
        for g in gens:
            if all(g(b) == b for b in self.base):
                self._add_level(min(i for i, v in enumerate(g.images) if i != v))
        for g in gens:
            for level in range(len(self.base)):
                self.gens[level].append(g)
                if g(self.base[level]) != self.base[level]:
                    break
        for level in range(len(self.base)):
            self._extend_orbit(level)
        self._schreier_sims()

    def _add_level(self, beta: int) -> None:
        self.base.append(beta)
        self.gens.append([])
        self.transversals.append({beta: self._identity})
        self._orbit.append([beta])
        self._done.append(set())

    def _extend_orbit(self, level: int) -> None:
        trans, orbit, gens = self.transversals[level], self._orbit[level], self.gens[level]
        i = 0
        while i < len(orbit):
            b = orbit[i]
            u = trans[b]
            for s in gens:
                c = s(b)
                if c not in trans:
                    trans[c] = s * u
                    orbit.append(c)
            i += 1

    def _schreier_sims(self) -> None:
        level = len(self.base) - 1
        while level >= 0:
            deeper = self._process_level(level)
            level = level - 1 if deeper is None else deeper

    def _process_level(self, level: int) -> int | None:
        trans, done = self.transversals[level], self._done[level]
        for b in self._orbit[level]:
            u = trans[b]
            for k, s in enumerate(self.gens[level]):
                if (b, k) in done:
                    continue
                done.add((b, k))
                h = trans[s(b)].inverse() * s * u
                if h.is_identity():
                    continue
                res, drop = self.sift(h, level + 1)
                if res.is_identity():
                    continue
                if drop == len(self.base):
                    self._add_level(min(i for i, v in enumerate(res.images) if i != v))
                for lv in range(level + 1, drop + 1):
                    self.gens[lv].append(res)
                    self._extend_orbit(lv)
                return drop
        return None

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        """Strip g through the chain from ``start``; returns (residue, level)."""
        for level in range(start, len(self.base)):
            b = g(self.base[level])
            u = self.transversals[level].get(b)
            if u is None:
                return g, level
            g = u.inverse() * g
        return g, len(self.base)

    def order(self) -> int:
        n = 1
        for t in self.transversals:
            n *= len(t)
        return n

    def contains(self, g: Perm) -> bool:
        h, _ = self.sift(g)
        return h.is_identity()

    def orbit_sizes(self) -> list[int]:
        return [len(t) for t in self.transversals]


def group_order(rep: PermRep) -> int:
    if not rep.generators:
        return 1
    return StabChain(rep.perms, rep.degree).order()


# ---------------------------------------------------------------------------
# Backtrack searches
# ---------------------------------------------------------------------------


def _joint_colors(src: Sequence[Perm], dst: Sequence[Perm], degree: int, rounds: int = 4):
    """Colour refinement run on both sides with one shared colour table.

    Initial colour of a point: the tuple of its cycle lengths under each
    generator.  Each round appends the colours of the point's images.  Any
    equivalence maps points to points of equal colour.
    """

    def initial(perms):
        lengths = []
        for p in perms:
            cl = [0] * degree
            for c in p.cycles(include_fixed=True):
                for a in c:
                    cl[a] = len(c)
            lengths.append(cl)
        return [tuple(cl[a] for cl in lengths) for a in range(degree)]

    cs, cd = initial(src), initial(dst)
    for _ in range(rounds):
        ks = [(cs[a],) + tuple(cs[p(a)] for p in src) for a in range(degree)]
        kd = [(cd[a],) + tuple(cd[p(a)] for p in dst) for a in range(degree)]
        table = {k: i for i, k in enumerate(sorted(set(ks) | set(kd)))}
        new_s = [table[k] for k in ks]
        new_d = [table[k] for k in kd]
        stable = len(set(new_s)) == len(set(cs)) and len(set(new_d)) == len(set(cd))
        cs, cd = new_s, new_d
        if stable:
            break
    return cs, cd


def _simultaneous_search(
    src: Sequence[Perm],
    dst: Sequence[Perm],
    degree: int,
    *,
    all_solutions: bool,
    node_budget: int,
    keep=None,
):
    """Find permutations x with x(s(a)) = d(x(a)) for every paired (s, d).

    Solutions are built orbit by orbit: choosing x on one point of a source
    orbit determines x on the whole orbit.  ``keep`` filters full solutions.
    """
    src_orbits = orbit_partition(src, degree)
    dst_orbits = orbit_partition(dst, degree)
    dst_orbit_of = {}
    for i, o in enumerate(dst_orbits):
        for a in o:
            dst_orbit_of[a] = i
    if sorted(map(len, src_orbits)) != sorted(map(len, dst_orbits)):
        return []
    src_col, dst_col = _joint_colors(src, dst, degree)
    if Counter(src_col) != Counter(dst_col):
        return []

    # Spanning tree of each source orbit: (point, generator index, parent).
    trees = []
    for o in src_orbits:
        root = o[0]
        order = [(root, -1, -1)]
        seen = {root}
        for a, _, _ in order:
            for k, s in enumerate(src):
                b = s(a)
                if b not in seen:
                    seen.add(b)
                    order.append((b, k, a))
        trees.append(order)

    x = [-1] * degree
    used = [False] * degree
    used_orbit = [False] * len(dst_orbits)
    solutions = []
    nodes = 0

    def extend(tree) -> list[int] | None:
        assigned = []
        for b, k, parent in tree[1:]:
            img = dst[k](x[parent])
            if used[img] or dst_col[img] != src_col[b]:
                for a in assigned:
                    used[x[a]] = False
                    x[a] = -1
                return None
            x[b] = img
            used[img] = True
            assigned.append(b)
        # All generator edges inside the orbit must be respected.
        for b, _, _ in tree:
            xb = x[b]
            for s, d in zip(src, dst):
                if x[s(b)] != d(xb):
                    for a in assigned:
                        used[x[a]] = False
                        x[a] = -1
                    return None
        return assigned

    def recurse(i: int) -> bool:
        nonlocal nodes
        if i == len(trees):
            sol = Perm._trusted(tuple(x))
            if keep is None or keep(sol):
                solutions.append(sol)
                return not all_solutions
            return False
        tree = trees[i]
        root = tree[0][0]
        size = len(tree)
        for q in range(degree):
            if used[q] or dst_col[q] != src_col[root]:
                continue
            j = dst_orbit_of[q]
            if used_orbit[j] or len(dst_orbits[j]) != size:
                continue
            nodes += 1
            if nodes > node_budget:
                raise SearchBudgetExceeded(f"backtrack exceeded {node_budget} nodes")
            x[root] = q
            used[q] = True
            assigned = extend(tree)
            if assigned is not None:
                used_orbit[j] = True
                if recurse(i + 1):
                    return True
                used_orbit[j] = False
                for a in assigned:
                    used[x[a]] = False
                    x[a] = -1
            used[q] = False
            x[root] = -1
        return False

    recurse(0)
    return solutions


def centralizing_elements(
    rep: PermRep,
    filter: CycleType | None = None,
    *,
    max_degree: int | None = DEFAULT_MAX_DEGREE,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> list[Perm]:
    """All x in S_m commuting with every generator image, sorted.

    With ``filter``, only elements of that cycle type are returned.
    """
    if max_degree is not None and rep.degree > max_degree:
        raise ValueError(f"degree {rep.degree} exceeds max_degree {max_degree}")
    keep = None if filter is None else (lambda x: cycle_type(x) == filter)
    sols = _simultaneous_search(
        rep.perms, rep.perms, rep.degree, all_solutions=True, node_budget=node_budget, keep=keep
    )
    return sorted(sols)


def are_equivalent(
    a: PermRep,
    b: PermRep,
    *,
    max_degree: int | None = DEFAULT_MAX_DEGREE,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Perm | None:
    """A conjugator x with x * a[T] * x^-1 == b[T] for every generator T, or None.

    Generators are matched by name; both representations must have the same
    degree and the same generator names.
    """
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    if set(a.names) != set(b.names):
        raise ValueError(f"generator names differ: {a.names} vs {b.names}")
    if max_degree is not None and a.degree > max_degree:
        raise ValueError(f"degree {a.degree} exceeds max_degree {max_degree}")
    bd = b.as_dict()
    src = a.perms
    dst = tuple(bd[n] for n in a.names)
    for s, d in zip(src, dst):
        if cycle_type(s) != cycle_type(d):
            return None
    sols = _simultaneous_search(src, dst, a.degree, all_solutions=False, node_budget=node_budget)
    return sols[0] if sols else None
