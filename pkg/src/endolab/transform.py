"""Partial transformations of the chain {1 < 2 < ... < n}.

Maps act on the right: ``x(st) = (xs)t``, so ``compose(s, t)`` applies ``s``
first.  A point outside the domain is stored as ``BOTTOM`` (0), which sorts
below every real point; the canonical order on maps is the lexicographic
order of their image tuples.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

BOTTOM = 0
MAX_N = 64


class SizeMismatchError(ValueError):
    pass


class TransformParseError(ValueError):
    pass


class Monotonicity(enum.Enum):
    PRESERVING_ONLY = "PreservingOnly"
    REVERSING_ONLY = "ReversingOnly"
    BOTH = "Both"
    NEITHER = "Neither"

    @property
    def preserving(self) -> bool:
        return self in (Monotonicity.PRESERVING_ONLY, Monotonicity.BOTH)

    @property
    def reversing(self) -> bool:
        return self in (Monotonicity.REVERSING_ONLY, Monotonicity.BOTH)


class Family(enum.Enum):
    O = "o"
    POI = "poi"
    PO = "po"
    OD = "od"
    PODI = "podi"
    POD = "pod"
    I1_ONE = "i1one"
    I1_TAU = "i1tau"

    @property
    def is_m_type(self) -> bool:
        return self in (Family.OD, Family.PODI, Family.POD)

    @property
    def is_t_type(self) -> bool:
        return self in (Family.O, Family.POI, Family.PO)

    @property
    def core(self) -> Family:
        """The order-preserving monoid T with M = <T, tau>."""
        return {Family.OD: Family.O, Family.PODI: Family.POI, Family.POD: Family.PO}.get(self, self)

    @property
    def extension(self) -> Family:
        return {Family.O: Family.OD, Family.POI: Family.PODI, Family.PO: Family.POD}.get(self, self)

    @property
    def has_empty(self) -> bool:
        return self not in (Family.O, Family.OD)


@dataclass(frozen=True)
class MonoidSpec:
    family: Family
    n: int

    def __post_init__(self) -> None:
        if isinstance(self.family, str):
            object.__setattr__(self, "family", Family(self.family.lower()))
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"chain size must lie in 1..{MAX_N}, got {self.n}")

    def __str__(self) -> str:
        return f"{self.family.name}_{self.n}"


@dataclass(frozen=True, order=True)
class ChainMap:
    """A partial transformation of {1..n}; ``images[i-1]`` is the image of i."""

    n: int
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.n:
            raise SizeMismatchError(f"expected {self.n} entries, got {len(images)}")
        for x in images:
            if not BOTTOM <= x <= self.n:
                raise ValueError(f"image {x} outside 1..{self.n}")

    @classmethod
    def from_dict(cls, n: int, mapping: dict[int, int]) -> ChainMap:
        images = [BOTTOM] * n
        for x, y in mapping.items():
            if not 1 <= x <= n:
                raise ValueError(f"point {x} outside 1..{n}")
            images[x - 1] = y
        return cls(n, tuple(images))

    @classmethod
    def identity(cls, n: int) -> ChainMap:
        return cls(n, tuple(range(1, n + 1)))

    @classmethod
    def empty(cls, n: int) -> ChainMap:
        return cls(n, (BOTTOM,) * n)

    @classmethod
    def constant(cls, n: int, value: int, domain: Iterable[int] | None = None) -> ChainMap:
        dom = range(1, n + 1) if domain is None else domain
        return cls.from_dict(n, {x: value for x in dom})

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: ChainMap) -> ChainMap:
        return compose(self, other)

    def __str__(self) -> str:
        return format_map(self)

    def __repr__(self) -> str:
        return f"ChainMap({format_map(self)})"

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(i for i, y in enumerate(self.images, 1) if y)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(y for y in self.images if y)

    @property
    def rank(self) -> int:
        return len(self.image)

    @property
    def is_total(self) -> bool:
        return BOTTOM not in self.images

    @property
    def is_injective(self) -> bool:
        ys = [y for y in self.images if y]
        return len(ys) == len(set(ys))

    def pairs(self) -> Iterator[tuple[int, int]]:
        for i, y in enumerate(self.images, 1):
            if y:
                yield i, y

    def kernel(self) -> tuple[tuple[int, ...], ...]:
        """Partition of the domain by equal images, blocks sorted by least point."""
        blocks: dict[int, list[int]] = {}
        for x, y in self.pairs():
            blocks.setdefault(y, []).append(x)
        return tuple(sorted(tuple(b) for b in blocks.values()))

    def inverse(self) -> ChainMap:
        if not self.is_injective:
            raise ValueError("only partial permutations have inverses")
        return ChainMap.from_dict(self.n, {y: x for x, y in self.pairs()})

    def to_json(self) -> dict:
        return {"n": self.n, "images": [y or None for y in self.images]}

    @classmethod
    def from_json(cls, obj: dict | str) -> ChainMap:
        if isinstance(obj, str):
            obj = json.loads(obj)
        images = obj["images"]
        if len(images) != obj["n"]:
            raise SizeMismatchError("length of images does not match n")
        return cls(obj["n"], tuple(BOTTOM if y is None else int(y) for y in images))


def compose(s: ChainMap, t: ChainMap) -> ChainMap:
    """The product st: apply s, then t."""
    if s.n != t.n:
        raise SizeMismatchError(f"cannot compose maps on chains of size {s.n} and {t.n}")
    ti = t.images
    return ChainMap(s.n, tuple(ti[x - 1] if x else BOTTOM for x in s.images))


def compose_all(maps: Sequence[ChainMap], n: int | None = None) -> ChainMap:
    if not maps:
        if n is None:
            raise ValueError("empty product needs n")
        return ChainMap.identity(n)
    out = maps[0]
    for m in maps[1:]:
        out = compose(out, m)
    return out


def monotonicity(s: ChainMap) -> Monotonicity:
    ys = [y for y in s.images if y]
    up = all(a <= b for a, b in zip(ys, ys[1:]))
    down = all(a >= b for a, b in zip(ys, ys[1:]))
    if up and down:
        return Monotonicity.BOTH
    if up:
        return Monotonicity.PRESERVING_ONLY
    if down:
        return Monotonicity.REVERSING_ONLY
    return Monotonicity.NEITHER


def tau(n: int) -> ChainMap:
    return ChainMap(n, tuple(range(n, 0, -1)))


def is_member(s: ChainMap, spec: MonoidSpec) -> bool:
    if s.n != spec.n:
        raise SizeMismatchError(f"map on {s.n} points tested against {spec}")
    fam = spec.family
    if fam is Family.I1_ONE:
        return s.rank <= 1 or s == ChainMap.identity(s.n)
    if fam is Family.I1_TAU:
        return s.rank <= 1 or s == ChainMap.identity(s.n) or s == tau(s.n)
    if fam in (Family.O, Family.OD) and not s.is_total:
        return False
    if fam in (Family.POI, Family.PODI) and not s.is_injective:
        return False
    mono = monotonicity(s)
    if fam.is_t_type:
        return mono.preserving
    return mono is not Monotonicity.NEITHER


@dataclass(frozen=True)
class Profile:
    domain: frozenset[int]
    image: frozenset[int]
    rank: int
    kernel: tuple[tuple[int, ...], ...]
    idempotent: bool
    fixed_points: frozenset[int]


def profile(s: ChainMap) -> Profile:
    return Profile(
        domain=s.domain,
        image=s.image,
        rank=s.rank,
        kernel=s.kernel(),
        idempotent=compose(s, s) == s,
        fixed_points=frozenset(x for x, y in s.pairs() if x == y),
    )


def make_canonical(kind: str, n: int, index: int | None = None) -> ChainMap:
    """Named elements: ``tau``, ``e`` (1<=i<=n), ``f``/``g`` (2<=k<=n), ``x`` (0<=i<=n-1)."""
    if n < 2:
        raise ValueError("named elements need n >= 2")
    if kind == "tau":
        return tau(n)
    if index is None:
        raise ValueError(f"{kind!r} needs an index")
    ident = {x: x for x in range(1, n + 1)}
    if kind == "e":
        if not 1 <= index <= n:
            raise ValueError(f"e index {index} outside 1..{n}")
        del ident[index]
        return ChainMap.from_dict(n, ident)
    if kind in ("f", "g"):
        if not 2 <= index <= n:
            raise ValueError(f"{kind} index {index} outside 2..{n}")
        if kind == "f":
            ident[index] = index - 1
        else:
            ident[index - 1] = index
        return ChainMap.from_dict(n, ident)
    if kind == "x":
        if not 0 <= index <= n - 1:
            raise ValueError(f"x index {index} outside 0..{n - 1}")
        if index == 0:
            return ChainMap.from_dict(n, {x: x - 1 for x in range(2, n + 1)})
        gap = n - index + 1
        del ident[gap]
        ident[gap - 1] = gap
        return ChainMap.from_dict(n, ident)
    raise ValueError(f"unknown canonical element {kind!r}")


_ENTRY = re.compile(r"\s*(\d+|_)\s*")


def parse_map(text: str, n: int | None = None) -> ChainMap:
    """Read ``[2,_,3]``; the number of entries fixes n."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise TransformParseError(f"expected '[...]', got {text!r}")
    parts = body[1:-1].split(",")
    images = []
    for part in parts:
        m = _ENTRY.fullmatch(part)
        if m is None:
            raise TransformParseError(f"bad entry {part!r} in {text!r}")
        tok = m.group(1)
        images.append(None if tok == "_" else int(tok))
    size = len(images)
    if n is not None and n != size:
        raise SizeMismatchError(f"{text!r} has {size} entries, expected {n}")
    for y in images:
        if y is not None and not 1 <= y <= size:
            raise TransformParseError(f"entry {y} out of range 1..{size} in {text!r}")
    return ChainMap(size, tuple(BOTTOM if y is None else y for y in images))


def format_map(s: ChainMap) -> str:
    return "[" + ",".join(str(y) if y else "_" for y in s.images) + "]"
