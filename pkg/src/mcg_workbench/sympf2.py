"""Symplectic linear algebra over F2, quadratic forms, and the permutation
representations of the mapping class group on forms of one type.

Vectors of V = F2^{2g} are Python ints: bit i-1 holds the coordinate of
e_i (1-based basis).  Coordinate i pairs with i_bar = 2g+1-i, so the
symplectic pairing is ``<x, y> = sum_i x_i y_{i_bar}`` and the quadratic
forms polarizing to it are ``Q_b(x) = sum_{i<=g} x_i x_{i_bar} + <x, b>``.

The action of omega on forms is the right action ``(omega . Q)(x) = Q(omega x)``:
``act_on_form(w1 * w2, b) == act_on_form(w2, act_on_form(w1, b))``.
That matches how words act on cosets, so a word in the Dehn twists acts on
forms the way :func:`fpgrp.evaluate_word` evaluates it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from . import orders
from .fpgrp import Presentation, evaluate_in
from .perm import Perm
from .permgrp import PermRep, are_equivalent, group_order, orbits

__all__ = [
    "FormType",
    "F2Mat",
    "pairing",
    "q0",
    "eval_form",
    "form_type",
    "zero_count",
    "forms_of_type",
    "transvection",
    "homology_classes",
    "theta_images",
    "matrix_relator_failures",
    "vector_action",
    "act_on_form",
    "build_phi",
    "Block",
    "Decomposition",
    "restrict_decompose",
    "stabilizer_order",
    "count_isotropic_subspaces",
    "vec_to_hex",
    "vec_from_hex",
]


class FormType(str, Enum):
    PLUS = "+"
    MINUS = "-"

    @classmethod
    def parse(cls, value) -> "FormType":
        if isinstance(value, FormType):
            return value
        text = str(value).strip().lower()
        if text in ("+", "plus", "+1", "1"):
            return cls.PLUS
        if text in ("-", "minus", "-1"):
            return cls.MINUS
        raise ValueError(f"form type must be + or -, got {value!r}")

    @property
    def other(self) -> "FormType":
        return FormType.MINUS if self is FormType.PLUS else FormType.PLUS

    def __str__(self) -> str:
        return self.value


def _bitrev(x: int, n: int) -> int:
    return int(format(x, f"0{n}b")[::-1], 2) if n else 0


def _check_vec(x: int, n: int) -> None:
    if x < 0 or x >> n:
        raise ValueError(f"vector {x:#x} does not fit in dimension {n}")


def pairing(x: int, y: int, g: int) -> int:
    """<x, y> = sum_i x_i y_{2g+1-i} mod 2."""
    n = 2 * g
    _check_vec(x, n)
    _check_vec(y, n)
    return (x & _bitrev(y, n)).bit_count() & 1


def q0(x: int, g: int) -> int:
    """The base form Q_0(x) = sum_{i<=g} x_i x_{i_bar}."""
    return (x & _bitrev(x, 2 * g) & ((1 << g) - 1)).bit_count() & 1


def eval_form(b: int, x: int, g: int) -> int:
    """Q_b(x)."""
    return q0(x, g) ^ pairing(x, b, g)


def form_type(b: int, g: int) -> FormType:
    """Type of Q_b from its Arf invariant sum_i Q_b(e_i) Q_b(e_i_bar).

    Q_b(e_i) = b_{i_bar}, so the Arf invariant equals Q_0(b).
    """
    _check_vec(b, 2 * g)
    return FormType.PLUS if q0(b, g) == 0 else FormType.MINUS


def zero_count(b: int, g: int) -> int:
    """#{x : Q_b(x) = 0}; 2^{2g-1} + eps 2^{g-1} for a form of type eps."""
    return sum(1 for x in range(1 << (2 * g)) if eval_form(b, x, g) == 0)


def forms_of_type(g: int, eps) -> list[int]:
    """All b with Q_b of type eps, in increasing order (the "sorted-b" labels)."""
    eps = FormType.parse(eps)
    want = 0 if eps is FormType.PLUS else 1
    return [b for b in range(1 << (2 * g)) if q0(b, g) == want]


def vec_to_hex(x: int, n: int) -> str:
    _check_vec(x, n)
    return f"{n}:{x:0{max(1, (n + 3) // 4)}x}"


def vec_from_hex(text: str) -> tuple[int, int]:
    n, _, digits = text.partition(":")
    x = int(digits, 16)
    _check_vec(x, int(n))
    return x, int(n)


@dataclass(frozen=True)
class F2Mat:
    """An n x n matrix over F2 stored by columns: ``cols[j]`` is the image
    of e_{j+1} as a bit vector."""

    cols: tuple[int, ...]

    def __post_init__(self):
        n = len(self.cols)
        object.__setattr__(self, "cols", tuple(int(c) for c in self.cols))
        for c in self.cols:
            _check_vec(c, n)

    @property
    def n(self) -> int:
        return len(self.cols)

    @classmethod
    def identity(cls, n: int) -> "F2Mat":
        return cls(tuple(1 << j for j in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> "F2Mat":
        n = len(rows)
        return cls(tuple(sum(((rows[i] >> j) & 1) << i for i in range(n)) for j in range(n)))

    def rows(self) -> tuple[int, ...]:
        n = self.n
        return tuple(sum(((self.cols[j] >> i) & 1) << j for j in range(n)) for i in range(n))

    def __call__(self, x: int) -> int:
        out = 0
        j = 0
        while x:
            if x & 1:
                out ^= self.cols[j]
            x >>= 1
            j += 1
        return out

    def __mul__(self, other: "F2Mat") -> "F2Mat":
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        return F2Mat(tuple(self(c) for c in other.cols))

    def __pow__(self, k: int) -> "F2Mat":
        base = self if k >= 0 else self.inverse()
        out = F2Mat.identity(self.n)
        for _ in range(abs(k)):
            out = out * base
        return out

    def inverse(self) -> "F2Mat":
        n = self.n
        # Gauss-Jordan on rows of [A | I]
        rows = [(r, 1 << i) for i, r in enumerate(self.rows())]
        for col in range(n):
            pivot = next((i for i in range(col, n) if (rows[i][0] >> col) & 1), None)
            if pivot is None:
                raise ValueError("matrix is singular")
            rows[col], rows[pivot] = rows[pivot], rows[col]
            pr, pi = rows[col]
            rows = [
                (r ^ pr, i ^ pi) if k != col and (r >> col) & 1 else (r, i)
                for k, (r, i) in enumerate(rows)
            ]
        return F2Mat.from_rows([i for _, i in rows])

    def is_identity(self) -> bool:
        return all(c == 1 << j for j, c in enumerate(self.cols))

    def is_symplectic(self) -> bool:
        """omega^T M omega = M for the antidiagonal form matrix M."""
        if self.n % 2:
            return False
        g = self.n // 2
        return all(
            pairing(self.cols[i], self.cols[j], g) == (1 if i + j == self.n - 1 else 0)
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )

    def to_hex(self) -> str:
        """``n:row1,row2,...`` with row i as hex, bit j-1 = entry (i, j)."""
        w = max(1, (self.n + 3) // 4)
        return f"{self.n}:" + ",".join(f"{r:0{w}x}" for r in self.rows())

    @classmethod
    def from_hex(cls, text: str) -> "F2Mat":
        n, _, body = text.partition(":")
        rows = [int(r, 16) for r in body.split(",")] if body else []
        if len(rows) != int(n):
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        return cls.from_rows(rows)


def transvection(c: int, g: int) -> F2Mat:
    """x -> x + <x, c> c.  The zero vector gives the identity."""
    n = 2 * g
    _check_vec(c, n)
    return F2Mat(tuple((1 << j) ^ (c if pairing(1 << j, c, g) else 0) for j in range(n)))


# ---------------------------------------------------------------------------
# Dehn twist generators
# ---------------------------------------------------------------------------


def _u(i: int, g: int) -> int:
    return 1 << (g - i)  # u_i = e_{g+1-i}


def _v(i: int, g: int) -> int:
    return 1 << (g + i - 1)  # v_i = e_{g+i}


def homology_classes(g: int) -> dict[int, int]:
    """Mod-2 homology classes h_0, ..., h_{2g+1} of the twist curves.

    In the ordered basis (u_g, ..., u_1, v_1, ..., v_g):
    h_1 = v_1, h_{2i} = u_i, h_{2i+1} = v_i + v_{i+1} for i < g,
    h_{2g+1} = v_g and h_0 = v_2.  Consecutive classes pair to 1, as do
    h_0 and h_4; every other pair is orthogonal.  The classes h_0..h_{2g-2}
    lie in span(e_2, ..., e_{2g-1}) and match the genus g-1 classes under
    e_{k+1} -> e_k, so restricting to that block reproduces genus g-1.
    """
    if g < 2:
        raise ValueError(f"genus must be at least 2, got {g}")
    h = {1: _v(1, g), 0: _v(2, g), 2 * g + 1: _v(g, g)}
    for i in range(1, g + 1):
        h[2 * i] = _u(i, g)
    for i in range(1, g):
        h[2 * i + 1] = _v(i, g) ^ _v(i + 1, g)
    return dict(sorted(h.items()))


def theta_images(g: int, include_extra: bool = False) -> dict[str, F2Mat]:
    """T_i -> transvection(h_i) for i = 0..2g (plus T_{2g+1} on request)."""
    h = homology_classes(g)
    top = 2 * g + 1 if include_extra else 2 * g
    return {f"T{i}": transvection(h[i], g) for i in range(top + 1)}


def matrix_relator_failures(pres: Presentation, images: Mapping[str, F2Mat]) -> list[int]:
    """Indices of relators that do not evaluate to the identity matrix."""
    n = next(iter(images.values())).n
    ident = F2Mat.identity(n)
    return [
        i
        for i, r in enumerate(pres.relators)
        if not evaluate_in(r, images, F2Mat.__mul__, ident, F2Mat.inverse).is_identity()
    ]


def vector_action(images: Mapping[str, F2Mat]) -> PermRep:
    """Action x -> omega x on the nonzero vectors (point k is vector k+1)."""
    mats = list(images.items())
    n = mats[0][1].n
    size = (1 << n) - 1
    return PermRep(
        size,
        tuple((name, Perm._trusted(tuple(m(x + 1) - 1 for x in range(size)))) for name, m in mats),
    )


# ---------------------------------------------------------------------------
# Forms and the representations phi
# ---------------------------------------------------------------------------


def act_on_form(omega: F2Mat, b: int, g: int | None = None, *, check: bool = True) -> int:
    """b^omega with Q_{b^omega}(x) = Q_b(omega x) for all x.

    x -> Q_b(omega x) + Q_0(x) is linear (both forms polarize to the same
    pairing), so it is <x, b^omega>; evaluating at e_i, where Q_0 vanishes,
    gives the coordinate (b^omega)_{i_bar} = Q_b(omega e_i).
    """
    n = omega.n
    g = n // 2 if g is None else g
    if n != 2 * g:
        raise ValueError(f"matrix of size {n} does not match genus {g}")
    if check and not omega.is_symplectic():
        raise ValueError("act_on_form needs a symplectic matrix")
    out = 0
    for i in range(n):
        if eval_form(b, omega.cols[i], g):
            out |= 1 << (n - 1 - i)
    return out


def build_phi(g: int, eps, boundaries: int = 1) -> PermRep:
    """The action of T_0..T_2g on the forms of type eps, points labeled by
    increasing b.  With ``boundaries`` N >= 2, the image of T_1 is repeated
    under the names T'1..T'N in place of T1."""
    eps = FormType.parse(eps)
    if boundaries < 1:
        raise ValueError("boundaries must be at least 1")
    domain = forms_of_type(g, eps)
    label = {b: k for k, b in enumerate(domain)}
    gens = []
    for name, omega in theta_images(g).items():
        if not omega.is_symplectic():
            raise AssertionError(f"theta image of {name} is not symplectic")
        perm = Perm._trusted(tuple(label[act_on_form(omega, b, g, check=False)] for b in domain))
        if name == "T1" and boundaries > 1:
            gens += [(f"T'{j}", perm) for j in range(1, boundaries + 1)]
        else:
            gens.append((name, perm))
    meta = {"g": g, "epsilon": eps.value, "labeling": "sorted-b"}
    if boundaries > 1:
        meta["boundaries"] = boundaries
    return PermRep(len(domain), tuple(gens), meta)


@dataclass(frozen=True)
class Block:
    key: tuple[int, int]  # constant (b_1, b_2g) on the orbit
    size: int
    restricted_type: FormType
    points: tuple[int, ...]
    conjugator: Perm | None  # block action -> build_phi(g-1, restricted_type)

    def to_json_dict(self) -> dict:
        return {
            "b1_b2g": list(self.key),
            "size": self.size,
            "restricted_type": self.restricted_type.value,
            "equivalent": self.conjugator is not None,
            "conjugator": None if self.conjugator is None else str(self.conjugator),
        }


@dataclass(frozen=True)
class Decomposition:
    g: int
    eps: FormType
    blocks: tuple[Block, ...]
    representatives_separated: bool | None  # b0..b3 in distinct orbits (eps = +)

    @property
    def sizes(self) -> list[int]:
        return [b.size for b in self.blocks]

    @property
    def holds(self) -> bool:
        types = sorted(b.restricted_type.value for b in self.blocks)
        want = sorted([self.eps.value] * 3 + [self.eps.other.value])
        return (
            len(self.blocks) == 4
            and types == want
            and all(b.conjugator is not None for b in self.blocks)
            and all(
                b.size == orders.N(self.g - 1, b.restricted_type.value) for b in self.blocks
            )
            and self.representatives_separated is not False
        )

    def to_json_dict(self) -> dict:
        return {
            "g": self.g,
            "epsilon": self.eps.value,
            "holds": self.holds,
            "sizes": self.sizes,
            "representatives_separated": self.representatives_separated,
            "blocks": [b.to_json_dict() for b in self.blocks],
        }


def restrict_decompose(g: int, eps) -> Decomposition:
    """Orbits of the type-eps forms under T_0..T_{2g-2}, the generators
    of the block-embedded Sp_{2g-2} on span(e_2, ..., e_{2g-1}).

    Each orbit has constant (b_1, b_2g).  Its induced action is compared
    with build_phi(g-1, type of the middle part of b).
    """
    if g < 3:
        raise ValueError("restriction needs g >= 3")
    eps = FormType.parse(eps)
    rep = build_phi(g, eps)
    domain = forms_of_type(g, eps)
    sub = rep.restrict([f"T{i}" for i in range(2 * g - 1)])
    mid_mask = (1 << (2 * g - 2)) - 1
    blocks = []
    for orbit in orbits(sub):
        bs = [domain[k] for k in orbit]
        keys = {(b & 1, (b >> (2 * g - 1)) & 1) for b in bs}
        if len(keys) != 1:
            raise AssertionError(f"orbit with mixed (b1, b2g) values {sorted(keys)}")
        types = {form_type((b >> 1) & mid_mask, g - 1) for b in bs}
        if len(types) != 1:
            raise AssertionError("orbit mixes restricted form types")
        rtype = types.pop()
        block_rep = sub.on_block(orbit)
        target = build_phi(g - 1, rtype)
        x = None
        if block_rep.degree == target.degree:
            # sorted labelling on both sides makes the identity work directly
            if all(block_rep[n] == target[n] for n in target.names):
                x = Perm.identity(target.degree)
            else:
                x = are_equivalent(block_rep, target, max_degree=None)
        blocks.append(Block(keys.pop(), len(orbit), rtype, tuple(orbit), x))
    blocks.sort(key=lambda b: b.key)
    separated = None
    if eps is FormType.PLUS:
        reps = [0, 1, 1 << (2 * g - 1), 1 | 2 | (1 << (2 * g - 2)) | (1 << (2 * g - 1))]
        where = {}
        for i, blk in enumerate(blocks):
            for k in blk.points:
                where[domain[k]] = i
        separated = all(b in where for b in reps) and len({where[b] for b in reps}) == 4
    return Decomposition(g, eps, tuple(blocks), separated)


def stabilizer_order(g: int, eps) -> int:
    """|image of phi| / degree: the order of the stabilizer O^eps_{2g}(F2)."""
    rep = build_phi(g, eps)
    order = group_order(rep)
    if order % rep.degree:
        raise AssertionError("orbit-stabilizer violated: degree does not divide the order")
    return order // rep.degree


def count_isotropic_subspaces(g: int, k: int) -> int:
    """Number of k-dimensional totally isotropic subspaces of F2^{2g}, by
    counting ordered bases of mutually orthogonal independent vectors."""
    n = 2 * g
    vectors = range(1, 1 << n)

    def extend(basis: list[int], span: set[int]) -> int:
        if len(basis) == k:
            return 1
        total = 0
        for v in vectors:
            if v in span or any(pairing(v, w, g) for w in basis):
                continue
            total += extend(basis + [v], span | {s ^ v for s in span})
        return total

    ordered = extend([], {0})
    gl = 1
    for i in range(k):
        gl *= (1 << k) - (1 << i)
    return ordered // gl
