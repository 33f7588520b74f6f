"""The component group A(phi) as an F_2 vector space and its characters.

Elements and characters are tuples of signs aligned with the sorted basis
of distinct good-parity keys.  At a key of multiplicity m the centralizer
factor is O(m, C), whose component is read off from the determinant; this
is why the center and the SL(2)-central elements carry the exponent m.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .parameters import JordanBlock, Key, Parameter, describe_key, good_parity, sort_key


def sign_product(values: Sequence[int]) -> int:
    out = 1
    for v in values:
        out *= v
    return out


@dataclass(frozen=True, order=True)
class GroupElement:
    coords: tuple[int, ...]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(tuple(x * y for x, y in zip(self.coords, other.coords)))

    @property
    def is_identity(self) -> bool:
        return all(c == 1 for c in self.coords)

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True, order=True)
class Character:
    values: tuple[int, ...]

    def __call__(self, s: GroupElement) -> int:
        return sign_product(v for v, c in zip(self.values, s.coords) if c == -1)

    def __mul__(self, other: "Character") -> "Character":
        return Character(tuple(x * y for x, y in zip(self.values, other.values)))

    def __iter__(self):
        return iter(self.values)

    @property
    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def __str__(self):
        return "(" + ",".join("+" if v == 1 else "-" for v in self.values) + ")"


def signs(coords) -> tuple[int, ...]:
    out = tuple(int(c) for c in coords)
    if any(c not in (1, -1) for c in out):
        raise ValueError(f"coordinates must be +-1, got {list(out)}")
    return out


@dataclass(frozen=True)
class ComponentGroup:
    parent: Parameter
    basis: tuple[Key, ...]

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return 2**self.k

    def mults(self) -> tuple[int, ...]:
        return tuple(self.parent.mult(key) for key in self.basis)

    def index(self, key: Key) -> int:
        return self.basis.index(key)

    def identity(self) -> GroupElement:
        return GroupElement((1,) * self.k)

    def trivial_character(self) -> Character:
        return Character((1,) * self.k)

    def element(self, coords) -> GroupElement:
        coords = signs(coords)
        if len(coords) != self.k:
            raise ValueError(f"expected {self.k} coordinates, got {len(coords)}")
        return GroupElement(coords)

    def character(self, values) -> Character:
        values = signs(values)
        if len(values) != self.k:
            raise ValueError(f"expected {self.k} values, got {len(values)}")
        return Character(values)

    def character_from_map(self, values: dict) -> Character:
        return Character(tuple(values[key] for key in self.basis))

    def generator(self, i: int) -> GroupElement:
        return GroupElement(tuple(-1 if j == i else 1 for j in range(self.k)))

    def elements(self) -> Iterator[GroupElement]:
        for c in product((1, -1), repeat=self.k):
            yield GroupElement(c)

    def characters(self) -> Iterator[Character]:
        for c in product((1, -1), repeat=self.k):
            yield Character(c)

    def basis_names(self) -> list[str]:
        return [describe_key(key) for key in self.basis]


@lru_cache(maxsize=4096)
def component_group(param: Parameter) -> ComponentGroup:
    keys = sorted({blk.key for blk in param.blocks if good_parity(blk, param.kind)}, key=sort_key)
    return ComponentGroup(param, tuple(keys))


def center_element(group: ComponentGroup) -> GroupElement:
    """Image of -Id: det(-Id_m) = (-1)^m on the O(m) factor of each key."""
    return GroupElement(tuple(-1 if m % 2 else 1 for m in group.mults()))


def _sl2_center(group: ComponentGroup, which: int) -> GroupElement:
    coords = []
    for key, m in zip(group.basis, group.mults()):
        n = key[which]
        coords.append(-1 if ((n - 1) * m) % 2 else 1)
    return GroupElement(tuple(coords))


def s_arthur(group: ComponentGroup) -> GroupElement:
    """Image of -I under the Arthur SL(2): (-1)^(b-1) on each copy."""
    return _sl2_center(group, 2)


def s_langlands(group: ComponentGroup) -> GroupElement:
    """Image of -I under the Weil-Deligne SL(2): (-1)^(a-1) on each copy."""
    return _sl2_center(group, 1)


def restrict_to_center(group: ComponentGroup, eps: Character) -> int:
    return eps(center_element(group))


@dataclass(frozen=True)
class EndoscopicSplit:
    s: GroupElement
    plus: Parameter
    minus: Parameter
    minus_copies: tuple[tuple[Key, int], ...]

    def reduced(self) -> tuple:
        """Bookkeeping key modulo even numbers of moved copies."""
        return tuple((key, c % 2) for key, c in self.minus_copies)


def split_with_copies(group: ComponentGroup, s: GroupElement, minus_copies: dict, minus_disc: int = 1) -> EndoscopicSplit:
    """Split the parent by moving ``minus_copies[key]`` copies to the minus
    side; the copy counts must have the parity prescribed by ``s``."""
    param = group.parent
    plus, minus = [], []
    for blk in param.blocks:
        c = minus_copies.get(blk.key, 0)
        if not 0 <= c <= blk.mult:
            raise ValueError(f"cannot move {c} copies of {describe_key(blk.key)}")
        if blk.key in group.basis:
            want = 1 if s.coords[group.index(blk.key)] == -1 else 0
            if c % 2 != want:
                raise ValueError(f"copy count at {describe_key(blk.key)} does not match s")
        elif c % 2:
            raise ValueError("bad-parity blocks split in even numbers")
        if c:
            minus.append(JordanBlock(blk.rho, blk.a, blk.b, c))
        if blk.mult - c:
            plus.append(JordanBlock(blk.rho, blk.a, blk.b, blk.mult - c))
    copies = tuple(sorted(((k, minus_copies.get(k, 0)) for k in param.keys), key=lambda kv: sort_key(kv[0])))
    return EndoscopicSplit(
        s,
        Parameter(param.kind, tuple(plus), _plus_disc(param.disc, minus_disc)),
        Parameter(param.kind, tuple(minus), minus_disc),
        copies,
    )


def _plus_disc(disc: int, minus_disc: int) -> int:
    # discriminants multiply to the parent's; d / d' ~ d * d' modulo squares
    return disc * minus_disc


def canonical_split(group: ComponentGroup, s: GroupElement, minus_disc: int | None = None) -> EndoscopicSplit:
    """One copy to the minus side at each -1 coordinate, the rest to plus.

    The minus factor's discriminant comes from the labels' determinants when
    they are all known, else from ``minus_disc`` (default: trivial).
    """
    copies = {key: 1 for key, c in zip(group.basis, s.coords) if c == -1}
    if minus_disc is None:
        minus = group.parent.with_blocks(JordanBlock(k[0], k[1], k[2], 1) for k in copies)
        minus_disc = minus.label_disc() or 1
    return split_with_copies(group, s, copies, minus_disc)


def all_splits(group: ComponentGroup, s: GroupElement) -> list[EndoscopicSplit]:
    """Every split with image s (used to check lift independence)."""
    options = []
    for blk in group.parent.blocks:
        if blk.key in group.basis:
            want = 1 if s.coords[group.index(blk.key)] == -1 else 0
        else:
            want = 0
        options.append([(blk.key, c) for c in range(want, blk.mult + 1, 2)])
    return [split_with_copies(group, s, dict(choice)) for choice in product(*options)]
