"""Symbolic Jordan-block model of A- and L-parameters for orthogonal groups."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from math import isqrt
from typing import Iterable, Mapping


class ParameterError(ValueError):
    pass


class Parity(str, Enum):
    ORTHOGONAL = "orthogonal"
    SYMPLECTIC = "symplectic"
    NONSELFDUAL = "nonselfdual"


class GroupKind(str, Enum):
    ODD = "odd-orthogonal"
    EVEN = "even-orthogonal"


class Kind(str, Enum):
    DISCRETE = "discrete"
    TEMPERED = "tempered"
    UNIPOTENT = "unipotent"
    GENERAL = "general"


@dataclass(frozen=True, order=True)
class CuspidalLabel:
    name: str
    d: int = 1
    parity: Parity = Parity.ORTHOGONAL
    det: int | None = None  # square class of det(rho), orthogonal labels only

    def __post_init__(self):
        object.__setattr__(self, "parity", Parity(self.parity))
        if self.det is not None and (self.det == 0 or self.parity is not Parity.ORTHOGONAL):
            raise ParameterError(f"label {self.name}: det is only meaningful (and nonzero) for orthogonal labels")
        if self.d < 1:
            raise ParameterError(f"label {self.name}: d must be >= 1")
        if self.parity is Parity.SYMPLECTIC and self.d % 2:
            raise ParameterError(f"label {self.name}: symplectic labels have even d")

    def to_json(self):
        out = {"name": self.name, "d": self.d, "parity": self.parity.value}
        if self.det is not None:
            out["det"] = self.det
        return out


class LabelRegistry:
    """Append-only name -> label table; conflicting redefinitions raise."""

    def __init__(self):
        self._labels: dict[str, CuspidalLabel] = {}
        self._lock = threading.Lock()

    def register(self, label: CuspidalLabel) -> CuspidalLabel:
        with self._lock:
            old = self._labels.setdefault(label.name, label)
        if old != label:
            raise ParameterError(f"label {label.name!r} already registered as {old}")
        return old

    def get(self, name: str) -> CuspidalLabel:
        return self._labels[name]

    def __contains__(self, name):
        return name in self._labels


REGISTRY = LabelRegistry()


def label(name: str, d: int = 1, parity="orthogonal", det: int | None = None,
          registry: LabelRegistry | None = None) -> CuspidalLabel:
    return (registry or REGISTRY).register(CuspidalLabel(name, d, Parity(parity), det))


Key = tuple  # (rho, a, b)


def sort_key(key: Key):
    rho, a, b = key
    return (rho.name, a, b)


@dataclass(frozen=True)
class JordanBlock:
    rho: CuspidalLabel
    a: int
    b: int = 1
    mult: int = 1

    def __post_init__(self):
        if self.a < 1 or self.b < 1 or self.mult < 1:
            raise ParameterError(f"block {self}: a, b, mult must be >= 1")

    @property
    def key(self) -> Key:
        return (self.rho, self.a, self.b)

    @property
    def dim(self) -> int:
        return self.mult * self.rho.d * self.a * self.b


def block_is_symplectic(rho: CuspidalLabel, a: int, b: int) -> bool | None:
    """Symmetry type of rho x R[a] x R[b]; None when rho is not self-dual."""
    if rho.parity is Parity.NONSELFDUAL:
        return None
    symp = rho.parity is Parity.SYMPLECTIC
    for n in (a, b):
        if n % 2 == 0:
            symp = not symp
    return symp


def good_parity(block, kind: GroupKind) -> bool:
    """Does the block have the symmetry type of the dual group?"""
    rho, a, b = block.key if isinstance(block, JordanBlock) else block
    symp = block_is_symplectic(rho, a, b)
    if symp is None:
        return False
    return symp if GroupKind(kind) is GroupKind.ODD else not symp


@dataclass(frozen=True)
class Parameter:
    """A multiset of Jordan blocks for an odd or even orthogonal group.

    ``disc`` is a nonzero rational integer; it is localized at whichever
    place a pure inner form is built.
    """

    kind: GroupKind
    blocks: tuple[JordanBlock, ...] = ()
    disc: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", GroupKind(self.kind))
        merged: dict[Key, int] = {}
        for blk in self.blocks:
            merged[blk.key] = merged.get(blk.key, 0) + blk.mult
        for key in merged:
            other = [k for k in merged if k[0].name == key[0].name and k[0] != key[0]]
            if other:
                raise ParameterError(f"label name {key[0].name!r} used with two definitions")
        blocks = tuple(JordanBlock(*k, m) for k, m in sorted(merged.items(), key=lambda kv: sort_key(kv[0])))
        object.__setattr__(self, "blocks", blocks)
        if self.disc == 0:
            raise ParameterError("discriminant must be nonzero")

    @classmethod
    def of(cls, kind, blocks: Iterable, disc: int = 1) -> "Parameter":
        """Build from (rho, a[, b[, mult]]) tuples or JordanBlocks."""
        out = []
        for blk in blocks:
            out.append(blk if isinstance(blk, JordanBlock) else JordanBlock(*blk))
        return cls(GroupKind(kind), tuple(out), disc)

    @property
    def N(self) -> int:
        return sum(blk.dim for blk in self.blocks)

    @property
    def keys(self) -> list[Key]:
        return [blk.key for blk in self.blocks]

    def mult(self, key: Key) -> int:
        for blk in self.blocks:
            if blk.key == key:
                return blk.mult
        return 0

    def __contains__(self, key) -> bool:
        return self.mult(key) > 0

    @property
    def group_dim(self) -> int:
        """Dimension of the quadratic space of the group."""
        return self.N + 1 if self.kind is GroupKind.ODD else self.N

    def good_blocks(self) -> list[JordanBlock]:
        return [blk for blk in self.blocks if good_parity(blk, self.kind)]

    @property
    def is_tempered(self) -> bool:
        return all(blk.b == 1 for blk in self.blocks)

    @property
    def is_unipotent(self) -> bool:
        return all(blk.a == 1 for blk in self.blocks)

    @property
    def is_discrete(self) -> bool:
        return self.is_tempered and all(good_parity(blk, self.kind) and blk.mult == 1 for blk in self.blocks)

    def with_blocks(self, blocks: Iterable[JordanBlock], disc: int | None = None) -> "Parameter":
        return Parameter(self.kind, tuple(blocks), self.disc if disc is None else disc)

    def __add__(self, other: "Parameter") -> "Parameter":
        if other.kind is not self.kind:
            raise ParameterError("cannot add parameters of different group kinds")
        return Parameter(self.kind, self.blocks + other.blocks, self.disc * other.disc)

    def label_disc(self) -> int | None:
        """det(phi) from the labels' determinants, when all are known.

        det(rho x R[a] x R[b]) = det(rho)^(ab); symplectic and conjugate-pair
        summands have trivial determinant.
        """
        out = 1
        for blk in self.blocks:
            if blk.rho.parity is not Parity.ORTHOGONAL:
                continue
            if blk.rho.det is None:
                return None
            if (blk.a * blk.b * blk.mult) % 2:
                out *= blk.rho.det
        return out

    def labels(self) -> list[CuspidalLabel]:
        return sorted({blk.rho for blk in self.blocks})

    def to_json(self) -> dict:
        return {
            "group": self.kind.value,
            "disc": self.disc,
            "blocks": [
                {"rho": blk.rho.to_json(), "a": blk.a, "b": blk.b, "mult": blk.mult} for blk in self.blocks
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping, registry: LabelRegistry | None = None) -> "Parameter":
        blocks = []
        for i, raw in enumerate(obj.get("blocks", [])):
            r = raw["rho"]
            if isinstance(r, str):
                rho = (registry or REGISTRY).get(r)
            else:
                det = r.get("det")
                rho = label(r["name"], int(r.get("d", 1)), r.get("parity", "orthogonal"),
                            None if det is None else int(det), registry)
            blocks.append(JordanBlock(rho, int(raw["a"]), int(raw.get("b", 1)), int(raw.get("mult", 1))))
        return cls(GroupKind(obj["group"]), tuple(blocks), int(obj.get("disc", 1)))


def _is_square(n: int) -> bool:
    return n > 0 and isqrt(n) ** 2 == n


def validate(param: Parameter) -> Kind:
    """Check the structural invariants and classify the parameter."""
    N = param.N
    if N % 2:
        raise ParameterError(f"N = {N} must be even")
    if param.kind is GroupKind.ODD and not _is_square(param.disc):
        raise ParameterError("odd orthogonal parameters have trivial discriminant")
    for blk in param.blocks:
        # wrong-type and non-self-dual summands come in conjugate pairs
        if not good_parity(blk, param.kind) and blk.mult % 2:
            raise ParameterError(f"bad-parity block {describe_key(blk.key)} needs even multiplicity")
    if param.is_discrete:
        return Kind.DISCRETE
    if param.is_tempered:
        return Kind.TEMPERED
    if param.is_unipotent:
        return Kind.UNIPOTENT
    return Kind.GENERAL


def dual_parameter(param: Parameter) -> Parameter:
    return param.with_blocks(JordanBlock(blk.rho, blk.b, blk.a, blk.mult) for blk in param.blocks)


def describe_key(key: Key) -> str:
    rho, a, b = key
    return f"({rho.name},{a},{b})" if b != 1 else f"({rho.name},{a})"
