"""Closed-form counts, evaluated exactly.

Irrational-looking expressions in sqrt(5) live in Z[phi], phi = (1 + sqrt 5)/2,
where sqrt(5) = 2 phi - 1 and (sqrt(5) - 1)/2 = phi - 1.  Every such value is
checked to land back in Z before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .transform import Family, MonoidSpec

T_FAMILIES = (Family.O, Family.POI, Family.PO)
M_FAMILIES = (Family.OD, Family.PODI, Family.POD)


class ArithmeticFault(ArithmeticError):
    """An expression that must be a rational integer was not."""


@dataclass(frozen=True)
class GoldenInt:
    """a + b*phi with integer a, b."""

    a: int = 0
    b: int = 0

    @staticmethod
    def coerce(x) -> GoldenInt:
        if isinstance(x, GoldenInt):
            return x
        if isinstance(x, int):
            return GoldenInt(x, 0)
        raise TypeError(f"cannot treat {type(x).__name__} as an element of Z[phi]")

    def __add__(self, other) -> GoldenInt:
        o = GoldenInt.coerce(other)
        return GoldenInt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> GoldenInt:
        return GoldenInt(-self.a, -self.b)

    def __sub__(self, other) -> GoldenInt:
        return self + (-GoldenInt.coerce(other))

    def __rsub__(self, other) -> GoldenInt:
        return GoldenInt.coerce(other) - self

    def __mul__(self, other) -> GoldenInt:
        o = GoldenInt.coerce(other)
        # phi^2 = phi + 1
        return GoldenInt(self.a * o.a + self.b * o.b, self.a * o.b + self.b * o.a + self.b * o.b)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> GoldenInt:
        if k < 0:
            raise ValueError("negative powers leave Z[phi] in general")
        out, base = GoldenInt(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        try:
            o = GoldenInt.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> GoldenInt:
        # phi -> 1 - phi
        return GoldenInt(self.a + self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.a * self.b - self.b * self.b

    def __int__(self) -> int:
        if self.b:
            raise ArithmeticFault(f"{self} is not a rational integer")
        return self.a

    def __repr__(self) -> str:
        return f"GoldenInt({self.a}, {self.b})"

    def __str__(self) -> str:
        return f"{self.a} + {self.b}*phi"


PHI = GoldenInt(0, 1)
SQRT5 = 2 * PHI - 1


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be non-negative")
    return math.comb(n, k)


@lru_cache(maxsize=None)
def _fib_pair(j: int) -> tuple[int, int]:
    # (F_j, F_{j+1}) by fast doubling
    if j == 0:
        return 0, 1
    f, g = _fib_pair(j >> 1)
    c = f * (2 * g - f)
    d = f * f + g * g
    return (d, c + d) if j & 1 else (c, d)


def fibonacci(j: int) -> int:
    """F_j with F_0 = 0 and F_1 = F_2 = 1."""
    if j < 0:
        raise ValueError("Fibonacci index must be non-negative")
    return _fib_pair(j)[0]


def golden_power_diff(k: int) -> int:
    """sqrt(5)^(k-1) * (phi^k - (phi-1)^k), which is always an integer."""
    if k < 1:
        raise ValueError("k must be at least 1")
    val = SQRT5 ** (k - 1) * (PHI**k - (PHI - 1) ** k)
    if not val.is_rational:
        raise ArithmeticFault(f"golden_power_diff({k}) left Z: {val}")
    return int(val)


def _family(family) -> Family:
    return family if isinstance(family, Family) else Family(family)


def idempotent_count_formula(family, n: int, i: int) -> int:
    """|E(J_i)| in O_n, POI_n or PO_n."""
    fam = _family(family)
    if not 1 <= i <= n:
        raise ValueError(f"rank {i} outside 1..{n}")
    if fam is Family.O:
        return binomial(n + i - 1, 2 * i - 1)
    if fam is Family.POI:
        return binomial(n, i)
    if fam is Family.PO:
        return sum(binomial(n, k) * binomial(k + i - 1, 2 * i - 1) for k in range(i, n + 1))
    raise ValueError(f"no idempotent formula for {fam.value}")


def idempotent_total(family, n: int) -> int:
    """|E(T)| including the empty map for the partial monoids."""
    fam = _family(family)
    base = 0 if fam is Family.O else 1
    return base + sum(idempotent_count_formula(fam, n, i) for i in range(1, n + 1))


def po_idempotents_closed_form(n: int) -> int:
    """|E(PO_n)| = 1 + sqrt(5)^(n-1) (phi^n - (phi-1)^n)."""
    return 1 + golden_power_diff(n)


def delta(i: int, family) -> int:
    """Number of rank-1 idempotents fixed by a non-idempotent group element of rank i."""
    fam = _family(family)
    if i < 2:
        raise ValueError("group elements of interest have rank at least 2")
    if fam not in M_FAMILIES:
        raise ValueError(f"delta is defined for OD, PODI, POD, not {fam.value}")
    if i % 2 == 0:
        return 0
    return 2 ** ((i - 1) // 2) if fam is Family.POD else 1


def centralizer_order(n: int) -> int:
    return math.factorial(n // 2) * 2 ** (n // 2)


# --- T-type counts ------------------------------------------------------------


def _o_total(n: int) -> int:
    return 2 + sum(binomial(n + i, 2 * i + 1) * fibonacci(2 * i + 2) for i in range(n))


def _poi_total(n: int) -> int:
    return 2 + math.factorial(n) + 3**n


def _po_pair_sum(n: int) -> int:
    return sum(
        golden_power_diff(k) * sum(binomial(n, i) * binomial(i + k - 1, 2 * k - 1) for i in range(k, n + 1))
        for k in range(1, n + 1)
    )


def _po_total(n: int) -> int:
    return 3 + math.factorial(n) + golden_power_diff(n) + _po_pair_sum(n)


_T_TOTAL = {Family.O: _o_total, Family.POI: _poi_total, Family.PO: _po_total}


def _t_pairs(fam: Family, n: int) -> int:
    """Pairs e != f of idempotents with ef = fe = f."""
    if fam is Family.O:
        return _o_total(n) - 2 - idempotent_total(fam, n)
    if fam is Family.POI:
        # nested pairs of distinct subsets
        return 3**n - 2**n
    return _po_pair_sum(n)


# --- M-type counts ------------------------------------------------------------


def property3_count(family, n: int) -> int:
    fam = _family(family)
    if fam is Family.OD:
        return 0
    if fam is Family.PODI:
        return 2**n - n - 1
    if fam is Family.POD:
        return golden_power_diff(n) - n * 2 ** (n - 1)
    raise ValueError(f"Property-3 count undefined for {fam.value}")


def property4_count(family, n: int) -> int:
    fam = _family(family)
    half = (n - 1) // 2
    if fam is Family.OD:
        closed = sum(binomial(n + 2 * i, 4 * i + 1) for i in range(1, half + 1))
    elif fam is Family.PODI:
        closed = sum(binomial(n, 2 * i + 1) for i in range(1, half + 1))
    elif fam is Family.POD:
        closed = sum(
            binomial(n, k) * binomial(k + 2 * i, 4 * i + 1) * 2**i
            for i in range(1, half + 1)
            for k in range(2 * i + 1, n + 1)
        )
    else:
        raise ValueError(f"Property-4 count undefined for {fam.value}")
    by_rank = sum(
        idempotent_count_formula(fam.core, n, i) * delta(i, fam) for i in range(2, n + 1)
    )
    if by_rank != closed:
        raise ArithmeticFault(f"Property-4 sums disagree for {fam.value}_{n}: {by_rank} != {closed}")
    return closed


def _m_total_closed(fam: Family, n: int) -> int:
    half = (n - 1) // 2
    if fam is Family.OD:
        return _o_total(n) + sum(binomial(n + 2 * i, 4 * i + 1) for i in range(1, half + 1))
    if fam is Family.PODI:
        return (
            1 + 2**n + 3**n - n + centralizer_order(n)
            + sum(binomial(n, 2 * i + 1) for i in range(1, half + 1))
        )
    return (
        3 + centralizer_order(n) - n * 2 ** (n - 1) + 2 * golden_power_diff(n)
        + _po_pair_sum(n)
        + sum(
            binomial(n, k) * binomial(k + 2 * i, 4 * i + 1) * 2**i
            for i in range(1, half + 1)
            for k in range(2 * i + 1, n + 1)
        )
    )


def _m_total_from_core(fam: Family, n: int) -> int:
    """|End(M)| written as |End(T)| plus corrections."""
    core = fam.core
    total = _T_TOTAL[core](n)
    if fam is not Family.OD:
        total += centralizer_order(n) - math.factorial(n) + property3_count(fam, n)
    return total + property4_count(fam, n)


# --- reports ------------------------------------------------------------------


@dataclass
class CountReport:
    spec: MonoidSpec
    total: int
    per_family: dict[str, int] = field(default_factory=dict)
    formula_terms: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.per_family and sum(self.per_family.values()) != self.total:
            raise ArithmeticFault(
                f"{self.spec}: family terms sum to {sum(self.per_family.values())}, total is {self.total}"
            )

    def to_json(self) -> dict:
        return {
            "spec": self.spec.family.value,
            "n": self.spec.n,
            "total": self.total,
            "per_family": dict(self.per_family),
            "formula_terms": dict(self.formula_terms),
        }


def endo_count(spec: MonoidSpec) -> CountReport:
    """|End(M)| from the closed forms, broken down by family."""
    fam, n = spec.family, spec.n
    if fam not in T_FAMILIES + M_FAMILIES:
        raise ValueError(f"no endomorphism count for {fam.value}")
    if n < 2:
        raise ValueError("counts are stated for n >= 2")
    core = fam.core
    per = {"Identity": 1, "InnerTau": 1}
    terms: dict[str, int] = {"automorphisms": 2}
    if fam in T_FAMILIES:
        total = _T_TOTAL[fam](n)
        if fam is not Family.O:
            per["PhiSigma"] = terms["phi_sigma"] = math.factorial(n)
    else:
        total = _m_total_closed(fam, n)
        via_core = _m_total_from_core(fam, n)
        terms["via_core_identity"] = via_core
        if via_core != total:
            raise ArithmeticFault(f"{spec}: closed form {total} != core identity {via_core}")
        if fam is not Family.OD:
            per["PhiSigma"] = terms["phi_sigma"] = centralizer_order(n)
            per["GroupToEmpty"] = terms["property3"] = property3_count(fam, n)
        per["GroupToRankOne"] = terms["property4"] = property4_count(fam, n)
    per["IdempotentPair"] = terms["idempotent_pairs"] = _t_pairs(core, n)
    per["Constant"] = terms["constants"] = idempotent_total(core, n)
    terms["total"] = total
    return CountReport(spec, total, per, terms)
