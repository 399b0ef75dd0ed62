"""Finitely presented groups: words, Matsumoto presentations, relator audits,
and abelianization.

Word syntax (used by the presentation text format and the CLI)::

    relation := word ('=' word)?        # "A = B" is stored as the relator A B^-1
    word     := factor ('*'? factor)*   # juxtaposition or '*' both multiply
    factor   := atom ('^' int)?
    atom     := NAME | '1' | '(' word ')'

``^`` binds to the atom immediately before it, so ``T2 T3 T4 T0^10`` means
``T2 T3 T4 (T0^10)``; write ``(T2 T3 T4 T0)^10`` for the power of a product.
Names are ``[A-Za-z_][A-Za-z0-9_']*``; ``1`` is the empty word.

Presentation text format::

    gens: T0 T1 T2
    # comment lines and blank lines are ignored
    T1 T2 T1 = T2 T1 T2
    (T0 T1)^6

Words act on the right, the way cosets do: :func:`evaluate_word` sends a
point through the letters from left to right, so ``evaluate_word(rep, x y)``
is the permutation ``rep[y] * rep[x]`` under :func:`perm.compose`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence, TypeVar

from .perm import Perm
from .permgrp import PermRep

__all__ = [
    "Word",
    "Presentation",
    "VerificationReport",
    "parse_word",
    "parse_relation",
    "format_word",
    "matsumoto_presentation",
    "intersecting_pairs",
    "evaluate_word",
    "evaluate_in",
    "verify_representation",
    "relation_matrix",
    "smith_diagonal",
    "abelianization",
    "add_relator",
]

Letter = tuple[str, int]
_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<int>[+-]?\d+)|(?P<op>[()*^=]))")


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for name, e in letters:
        if out and out[-1][0] == name and out[-1][1] == -e:
            out.pop()
        else:
            out.append((name, e))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; letters are (generator name, +1 or -1)."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for name, e in self.letters:
            if e not in (1, -1):
                raise ValueError(f"letter exponent must be +1 or -1, got {e} on {name}")
        object.__setattr__(self, "letters", _free_reduce(self.letters))

    @classmethod
    def gen(cls, name: str, power: int = 1) -> "Word":
        e = 1 if power >= 0 else -1
        return cls(((name, e),) * abs(power))

    @classmethod
    def product(cls, names: Iterable[str]) -> "Word":
        return cls(tuple((n, 1) for n in names))

    @classmethod
    def parse(cls, text: str) -> "Word":
        return parse_word(text)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((n, -e) for n, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def generators(self) -> set[str]:
        return {n for n, _ in self.letters}

    def exponent_sum(self, name: str) -> int:
        return sum(e for n, e in self.letters if n == name)

    def cyclic_reduce(self) -> "Word":
        letters = list(self.letters)
        while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
            letters = letters[1:-1]
        return Word(tuple(letters))

    def __str__(self) -> str:
        return format_word(self)


# ---------------------------------------------------------------------------
# Parsing and printing
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens: list[tuple[str, str]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse word at {text[pos:]!r}")
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ValueError(f"expected {value or 'token'}, got {tok[1]!r}")
        self.i += 1
        return tok

    def word(self) -> Word:
        letters: list[Letter] = []
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                continue
            if kind == "name" or (kind == "int" and val == "1") or (kind == "op" and val == "("):
                letters.extend(self.factor().letters)
            else:
                break
        return Word(tuple(letters))

    def factor(self) -> Word:
        kind, val = self.take()
        if kind == "name":
            w = Word(((val, 1),))
        elif kind == "int":
            w = Word()
        else:
            w = self.word()
            self.take(")")
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "int":
                raise ValueError(f"expected integer exponent, got {val!r}")
            w = w ** int(val)
        return w


def parse_word(text: str) -> Word:
    p = _Parser(text)
    w = p.word()
    if p.peek()[0] is not None:
        raise ValueError(f"unexpected {p.peek()[1]!r} in {text!r}")
    return w


def parse_relation(text: str) -> Word:
    """Parse ``A`` or ``A = B``; the latter becomes the relator A B^-1."""
    p = _Parser(text)
    lhs = p.word()
    if p.peek() == ("op", "="):
        p.take()
        rhs = p.word()
        lhs = lhs * rhs.inverse()
    if p.peek()[0] is not None:
        raise ValueError(f"unexpected {p.peek()[1]!r} in {text!r}")
    return lhs


def _format_letters(letters: Sequence[Letter]) -> str:
    parts = []
    i, n = 0, len(letters)
    while i < n:
        best_p, best_k, best_gain = 1, 1, 0
        for p in range(1, (n - i) // 2 + 1):
            block = letters[i : i + p]
            k = 1
            while letters[i + k * p : i + (k + 1) * p] == block:
                k += 1
            if k > 1 and (k - 1) * p > best_gain:
                best_p, best_k, best_gain = p, k, (k - 1) * p
        block = letters[i : i + best_p]
        k = best_k
        if best_p == 1:
            name, e = block[0]
            parts.append(name if k * e == 1 else f"{name}^{k * e}")
        else:
            if all(e == -1 for _, e in block):
                body, k = _format_letters([(nm, 1) for nm, _ in reversed(block)]), -k
            else:
                body = _format_letters(block)
            parts.append(f"({body})^{k}")
        i += best_p * best_k
    return " ".join(parts)


def format_word(w: Word) -> str:
    """Compact text for ``w``; periodic runs become powers.  Parses back to w."""
    if not w.letters:
        return "1"
    return _format_letters(list(w.letters))


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError(f"duplicate generators in {gens}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(self.relators))
        known = set(gens)
        for i, r in enumerate(self.relators):
            unknown = r.generators() - known
            if unknown:
                raise ValueError(f"relator {i} uses undeclared generators {sorted(unknown)}")

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.generators)]
        lines += [format_word(r) for r in self.relators]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str = "") -> "Presentation":
        gens = None
        relators = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if gens is None:
                if not line.startswith("gens:"):
                    raise ValueError("presentation text must start with a 'gens:' line")
                gens = tuple(line[len("gens:") :].split())
                continue
            relators.append(parse_relation(line))
        if gens is None:
            raise ValueError("missing 'gens:' line")
        return cls(gens, tuple(relators), name)


def add_relator(pres: Presentation, w: Word) -> Presentation:
    """The quotient by the normal closure of w: one more relator."""
    return Presentation(pres.generators, pres.relators + (w,), pres.name)


def intersecting_pairs(g: int) -> set[frozenset[int]]:
    """Curve pairs meeting in one point: consecutive chain curves, and a0 with a4."""
    pairs = {frozenset((i, i + 1)) for i in range(1, 2 * g)}
    pairs.add(frozenset((0, 4)))
    return pairs


def matsumoto_presentation(g: int, closed: bool = False) -> Presentation:
    """Matsumoto's presentation of M_{g,1} (or M_{g,0} when ``closed``)."""
    if g < 2:
        raise ValueError(f"genus must be at least 2, got {g}")
    names = [f"T{i}" for i in range(2 * g + 1)]
    T = {i: Word.gen(names[i]) for i in range(2 * g + 1)}
    meets = intersecting_pairs(g)
    relators = []
    for i in range(2 * g + 1):
        for j in range(i + 1, 2 * g + 1):
            if frozenset((i, j)) in meets:
                relators.append(T[i] * T[j] * T[i] * (T[j] * T[i] * T[j]).inverse())
            else:
                relators.append(T[i] * T[j] * T[i].inverse() * T[j].inverse())
    chain4 = Word.product(["T2", "T3", "T4", "T0"])
    chain5 = Word.product(["T1", "T2", "T3", "T4", "T0"])
    relators.append(chain4**10 * (chain5**6).inverse())
    if g >= 3:
        chain6 = Word.product(["T2", "T3", "T4", "T5", "T6", "T0"])
        chain7 = Word.product(["T1", "T2", "T3", "T4", "T5", "T6", "T0"])
        relators.append(chain6**12 * (chain7**9).inverse())
    if closed:
        tail = Word.product(["T0"] + [f"T{i}" for i in range(3, 2 * g)])
        relators.append(Word.gen("T1", 2 * g - 2) * (tail ** (4 * g - 4)).inverse())
    kind = "0" if closed else "1"
    return Presentation(tuple(names), tuple(relators), f"M_{{{g},{kind}}}")


# ---------------------------------------------------------------------------
# Evaluation and verification
# ---------------------------------------------------------------------------

X = TypeVar("X")


def evaluate_in(
    w: Word,
    images: Mapping[str, X],
    mul: Callable[[X, X], X],
    identity: X,
    inverse: Callable[[X], X],
) -> X:
    """Left-to-right product ``images[x1] * ... * images[xn]`` in any group."""
    result = identity
    inv_cache: dict[str, X] = {}
    for name, e in w.letters:
        if name not in images:
            raise KeyError(f"unknown generator {name}")
        if e == 1:
            x = images[name]
        else:
            if name not in inv_cache:
                inv_cache[name] = inverse(images[name])
            x = inv_cache[name]
        result = mul(result, x)
    return result


def evaluate_word(rep: PermRep, w: Word) -> Perm:
    """The permutation a point undergoes when pushed through w from the left."""
    images = rep.as_dict()
    table = {}
    for name, e in set(w.letters):
        if name not in images:
            raise KeyError(f"unknown generator {name}")
        p = images[name]
        table[(name, e)] = p.images if e == 1 else p.inverse().images
    cur = list(range(rep.degree))
    for letter in w.letters:
        img = table[letter]
        cur = [img[c] for c in cur]
    return Perm._trusted(tuple(cur))


@dataclass(frozen=True)
class VerificationReport:
    holds: bool
    failures: tuple[int, ...]
    relators: int

    def to_json_dict(self) -> dict:
        return {"holds": self.holds, "failures": list(self.failures), "relators": self.relators}


def verify_representation(pres: Presentation, rep: PermRep) -> VerificationReport:
    """Evaluate every relator on ``rep``; failures are relator indices."""
    if set(pres.generators) != set(rep.names):
        raise ValueError(f"generator names differ: {pres.generators} vs {rep.names}")
    failures = tuple(i for i, r in enumerate(pres.relators) if not evaluate_word(rep, r).is_identity())
    return VerificationReport(not failures, failures, len(pres.relators))


# ---------------------------------------------------------------------------
# Abelianization
# ---------------------------------------------------------------------------


def relation_matrix(pres: Presentation) -> list[list[int]]:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    return [[r.exponent_sum(gname) for gname in pres.generators] for r in pres.relators]


def smith_diagonal(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    """Invariant factors d1 | d2 | ... of an integer matrix (nonzero only).

    Plain integer elimination with a smallest-entry pivot, then a gcd/lcm
    pass to put the diagonal into divisibility order.
    """
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = ncols if ncols is not None else (len(a[0]) if a else 0)
    diag = []
    t = 0
    while t < min(rows, cols):
        entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    clean = False
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    clean = False
            if clean:
                break
            # a nonzero remainder is smaller than the pivot; move it in
            _, pi, pj = min(
                [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
                + [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
            )
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            g = math.gcd(diag[i], diag[j])
            diag[i], diag[j] = g, diag[i] * diag[j] // g
    return diag


def abelianization(pres: Presentation) -> list[int]:
    """Invariant factors of G/[G,G]: torsion ascending with 1s dropped, then a
    0 for each free factor.  The trivial group gives []."""
    diag = smith_diagonal(relation_matrix(pres), len(pres.generators))
    torsion = [d for d in diag if d != 1]
    return torsion + [0] * (len(pres.generators) - len(diag))
