from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .semigroup import FiniteSemigroup
from .transform import format_map


class NotAnEndomorphism(ValueError):
    pass


class TagKind(enum.Enum):
    IDENTITY = "Identity"
    INNER_TAU = "InnerTau"
    PHI_SIGMA = "PhiSigma"
    GROUP_TO_EMPTY = "GroupToEmpty"
    GROUP_TO_RANK_ONE = "GroupToRankOne"
    IDEMPOTENT_PAIR = "IdempotentPair"
    CONSTANT = "Constant"


# when one map has two descriptions, the earlier kind names it
PRECEDENCE = tuple(TagKind)


@dataclass(frozen=True)
class FamilyTag:
    kind: TagKind
    sigma: tuple[int, ...] | None = None
    h: int | None = None
    e: int | None = None
    f: int | None = None

    def params_json(self, S: FiniteSemigroup) -> dict:
        out: dict = {}
        if self.sigma is not None:
            out["sigma"] = list(self.sigma)
        for name in ("h", "e", "f"):
            v = getattr(self, name)
            if v is not None:
                out[name] = format_map(S.elements[v])
        return out

    def __str__(self) -> str:
        parts = []
        if self.sigma is not None:
            parts.append("sigma=" + "".join(map(str, self.sigma)))
        parts += [f"{k}={getattr(self, k)}" for k in ("h", "e", "f") if getattr(self, k) is not None]
        return f"{self.kind.value}({', '.join(parts)})"


def multiplicative(S: FiniteSemigroup, images: Sequence[int], everywhere: bool = False) -> bool:
    """img(sg) == img(s)img(g) for every element s and generator g (or every g)."""
    m = np.asarray(images, dtype=np.int64)
    tab = S.table
    cols = np.arange(len(S)) if everywhere else np.asarray(S.generators)
    lhs = m[tab[:, cols]]
    rhs = tab[m[:, None], m[cols][None, :]]
    return bool(np.array_equal(lhs, rhs))


@dataclass(frozen=True, eq=False)
class Endo:
    """A certified semigroup endomorphism, stored as a map on element ids."""

    semigroup: FiniteSemigroup = field(repr=False)
    map: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        S = self.semigroup
        if len(self.map) != len(S) or not all(0 <= x < len(S) for x in self.map):
            raise NotAnEndomorphism("not a self-map of the element ids")
        if not multiplicative(S, self.map):
            raise NotAnEndomorphism(f"map is not multiplicative on {S.spec}")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Endo):
            return NotImplemented
        return self.semigroup is other.semigroup and self.map == other.map

    def __hash__(self) -> int:
        return hash(self.map)

    def __lt__(self, other: Endo) -> bool:
        return self.map < other.map

    @property
    def is_bijective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def then(self, other: Endo) -> Endo:
        """Apply self, then other."""
        return Endo(self.semigroup, tuple(other.map[x] for x in self.map))

    def to_json(self, tag: FamilyTag | None = None) -> dict:
        S = self.semigroup
        out = {"spec": S.family.value, "n": S.n, "map": list(self.map)}
        if tag is not None:
            out["family"] = tag.kind.value
            out["parameters"] = tag.params_json(S)
        return out
