"""Exact orders of the maximal subgroups of Sp_{2g}(F2), the indices N_g^+-,
and the inequality ledgers built from them.  Integer arithmetic only."""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "CASES",
    "OrderFormula",
    "N",
    "sp_order",
    "order",
    "direct_product_order",
    "maximal_cases",
    "maximal_subgroup_ledger",
    "numeric_relations",
    "LedgerRow",
    "Ledger",
    "RelationsReport",
]

CASES = (
    "O-minus",
    "O-plus",
    "Sp",
    "bound-2^6g",
    "symmetric-2g+2",
    "field-ext",
    "wreath",
    "isotropic-stab",
    "nonsingular-stab",
)


def _sign(eps) -> int:
    text = str(getattr(eps, "value", eps)).strip().lower()
    if text in ("+", "plus", "+1", "1"):
        return 1
    if text in ("-", "minus", "-1"):
        return -1
    raise ValueError(f"form type must be + or -, got {eps!r}")


def N(g: int, eps) -> int:
    """Number of quadratic forms of type eps on F2^{2g}: 2^{g-1}(2^g + eps)."""
    if g < 1:
        raise ValueError("g must be at least 1")
    return 2 ** (g - 1) * (2**g + _sign(eps))


def _prod(terms) -> int:
    return math.prod(terms)


def sp_order(g: int) -> int:
    """|Sp_{2g}(F2)| = 2^{g^2} prod_{i=1}^{g} (2^{2i} - 1)."""
    if g < 0:
        raise ValueError("g must be non-negative")
    return 2 ** (g * g) * _prod(2 ** (2 * i) - 1 for i in range(1, g + 1))


def _is_prime(r: int) -> bool:
    return r > 1 and all(r % d for d in range(2, math.isqrt(r) + 1))


@dataclass(frozen=True)
class OrderFormula:
    """One case of the maximal-subgroup list; ``k`` or ``r`` as the case needs."""

    case: str
    g: int
    k: int | None = None
    r: int | None = None

    def __post_init__(self):
        if self.case not in CASES:
            raise ValueError(f"unknown case {self.case!r}")
        if self.g < 1:
            raise ValueError("g must be at least 1")
        g, k, r = self.g, self.k, self.r
        if self.case == "field-ext":
            if r is None or not _is_prime(r) or g % r:
                raise ValueError(f"field-ext needs a prime r dividing g, got r={r}, g={g}")
        elif self.case == "wreath":
            if r is None or r < 2 or g % r:
                raise ValueError(f"wreath needs r > 1 dividing g, got r={r}, g={g}")
        elif self.case == "isotropic-stab":
            if k is None or not 1 <= k <= g:
                raise ValueError(f"isotropic-stab needs 1 <= k <= g, got k={k}")
        elif self.case == "nonsingular-stab":
            if k is None or not 1 <= k <= g - 1:
                raise ValueError(f"nonsingular-stab needs 1 <= k <= g-1, got k={k}")

    @property
    def label(self) -> str:
        if self.r is not None:
            return f"{self.case}(r={self.r})"
        if self.k is not None:
            return f"{self.case}(k={self.k})"
        return self.case


def order(f: OrderFormula) -> int:
    """The displayed order (or bound, for the 2^{6g} and (2g+2)! cases)."""
    g = f.g
    if f.case in ("O-minus", "O-plus"):
        s = 1 if f.case == "O-minus" else -1
        return 2 ** (g * g - g + 1) * (2**g + s) * _prod(2 ** (2 * i) - 1 for i in range(1, g))
    if f.case == "Sp":
        return sp_order(g)
    if f.case == "bound-2^6g":
        return 2 ** (6 * g)
    if f.case == "symmetric-2g+2":
        return math.factorial(2 * g + 2)
    if f.case == "field-ext":
        r = f.r
        k = g // r
        return r * 2 ** (g * g // r) * _prod(2 ** (2 * r * i) - 1 for i in range(1, k + 1))
    if f.case == "wreath":
        r = f.r
        k = g // r
        return math.factorial(r) * 2 ** (g * g // r) * _prod(2 ** (2 * i) - 1 for i in range(1, k + 1)) ** r
    if f.case == "isotropic-stab":
        k = f.k
        return (
            2 ** (g * g)
            * _prod(2 ** (2 * i) - 1 for i in range(1, g - k + 1))
            * _prod(2 ** (i + 1) - 1 for i in range(1, k))
        )
    k = f.k  # nonsingular-stab
    return (
        2 ** (g * g + 2 * k * k - 2 * g * k)
        * _prod(2 ** (2 * i) - 1 for i in range(1, g - k + 1))
        * _prod(2 ** (2 * i) - 1 for i in range(1, k + 1))
    )


def direct_product_order(g: int, k: int) -> int:
    """|Sp_{2k}| |Sp_{2g-2k}|: the independent oracle for the nonsingular case."""
    return sp_order(k) * sp_order(g - k)


def maximal_cases(g: int) -> list[OrderFormula]:
    """Every instance of cases (3)-(8) with legal parameters for this g."""
    out = [OrderFormula("bound-2^6g", g), OrderFormula("symmetric-2g+2", g)]
    divisors = [r for r in range(2, g + 1) if g % r == 0]
    out += [OrderFormula("field-ext", g, r=r) for r in divisors if _is_prime(r)]
    out += [OrderFormula("wreath", g, r=r) for r in divisors]
    out += [OrderFormula("isotropic-stab", g, k=k) for k in range(1, g + 1)]
    out += [OrderFormula("nonsingular-stab", g, k=k) for k in range(1, g)]
    return out


@dataclass(frozen=True)
class LedgerRow:
    label: str
    order: int
    margin: int  # half of |O^-| minus the order; positive means the bound holds
    cross_check: bool | None  # nonsingular case against the direct product

    @property
    def holds(self) -> bool:
        return self.margin > 0 and self.cross_check is not False


@dataclass(frozen=True)
class Ledger:
    g: int
    half_o_minus: int
    rows: tuple[LedgerRow, ...]

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.rows)

    def to_json_dict(self) -> dict:
        return {
            "g": self.g,
            "half_o_minus": str(self.half_o_minus),
            "holds": self.holds,
            "rows": [
                {
                    "case": r.label,
                    "order": str(r.order),
                    "margin": str(r.margin),
                    "cross_check": r.cross_check,
                    "holds": r.holds,
                }
                for r in self.rows
            ],
        }

    def to_text(self) -> str:
        head = ("case", "order", "|O-|/2 - order", "ok")
        body = [(r.label, str(r.order), str(r.margin), "yes" if r.holds else "NO") for r in self.rows]
        body.append(("|O-|/2", str(self.half_o_minus), "", ""))
        widths = [max(len(row[i]) for row in [head] + body) for i in range(4)]
        lines = [
            f"{row[0]:<{widths[0]}}  {row[1]:>{widths[1]}}  {row[2]:>{widths[2]}}  {row[3]}".rstrip()
            for row in [head] + body
        ]
        return f"g = {self.g}\n" + "\n".join(lines) + "\n"


def maximal_subgroup_ledger(g: int) -> Ledger:
    """Every case (3)-(8) order against |O^-_{2g}(F2)|/2, exactly.

    The nonsingular-case formula is also compared with |Sp_2k| |Sp_{2g-2k}|.
    """
    if g < 4:
        raise ValueError("the ledger applies for g >= 4")
    half = order(OrderFormula("O-minus", g)) // 2
    rows = []
    for f in maximal_cases(g):
        value = order(f)
        check = value == direct_product_order(g, f.k) if f.case == "nonsingular-stab" else None
        rows.append(LedgerRow(f.label, value, half - value, check))
    return Ledger(g, half, tuple(rows))


@dataclass(frozen=True)
class RelationsReport:
    g: int
    checks: dict[str, bool]

    @property
    def holds(self) -> bool:
        return all(self.checks.values())

    def to_json_dict(self) -> dict:
        return {"g": self.g, "holds": self.holds, "checks": dict(self.checks)}


def numeric_relations(g: int) -> RelationsReport:
    """The recurrences N_g^{+-} = 3 N_{g-1}^{+-} + N_{g-1}^{-+} and the chain
    4 N_{g-1}^- < N_g^- < N_g^+ < 5 N_{g-1}^- < 2 N_g^-, whose third link is
    only claimed (and only checked) for g >= 4."""
    if g < 2:
        raise ValueError("g must be at least 2")
    pm, mm = N(g - 1, "+"), N(g - 1, "-")
    p, m = N(g, "+"), N(g, "-")
    checks = {
        "N+ = 3N+(g-1) + N-(g-1)": p == 3 * pm + mm,
        "N- = 3N-(g-1) + N+(g-1)": m == 3 * mm + pm,
        "4N-(g-1) < N-": 4 * mm < m,
        "N- < N+": m < p,
    }
    if g >= 4:
        checks["N+ < 5N-(g-1)"] = p < 5 * mm
    checks["5N-(g-1) < 2N-" if g >= 4 else "N+ < 2N-"] = (5 * mm < 2 * m) if g >= 4 else (p < 2 * m)
    return RelationsReport(g, checks)
