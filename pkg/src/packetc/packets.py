"""Discrete-series packets on the pure inner forms of an orthogonal group.

A packet entry is identified with its character: at fixed (phi, form) the
character is a complete invariant, so no representation is ever built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Mapping

from .component_group import (
    Character,
    ComponentGroup,
    GroupElement,
    canonical_split,
    center_element,
    component_group,
)
from .local_forms import (
    FormError,
    Place,
    QuadraticSpace,
    canonical_rep,
    enumerate_spaces,
    hasse_normalized,
    kottwitz_sign,
    witt_index,
)
from .parameters import Parameter, ParameterError, validate, Kind


@dataclass(frozen=True)
class PureInnerForm:
    space: QuadraticSpace

    @property
    def place(self) -> Place:
        return self.space.place

    @property
    def hasse(self) -> int:
        if self.space.place.is_real:
            raise FormError("packets are only enumerated at p-adic places")
        return hasse_normalized(self.space)

    @property
    def kottwitz(self) -> int:
        return kottwitz_sign(self.space)

    @property
    def witt(self) -> int:
        return witt_index(self.space)

    @property
    def dim(self) -> int:
        return self.space.dim

    def to_json(self):
        return self.space.to_json()


def pure_inner_form(param: Parameter, hasse: int = 1, place: Place | int = 3) -> PureInnerForm:
    """The p-adic pure inner form for ``param`` with normalized invariant
    ``hasse``; raises FormError when no such space exists."""
    place = place if isinstance(place, Place) else Place(place)
    return PureInnerForm(QuadraticSpace.with_normalized_hasse(place, param.group_dim, param.disc, hasse))


def inner_forms(param: Parameter, place: Place | int = 3) -> list[PureInnerForm]:
    place = place if isinstance(place, Place) else Place(place)
    return [PureInnerForm(s) for s in enumerate_spaces(place, param.group_dim, param.disc)]


def check_form(param: Parameter, form: PureInnerForm) -> None:
    if form.place.is_real:
        raise FormError("real forms are not supported for packet enumeration")
    if form.dim != param.group_dim:
        raise FormError(f"form has dim {form.dim}, parameter needs {param.group_dim}")
    if form.space.disc != canonical_rep(param.disc, form.place):
        raise FormError("form discriminant does not match the parameter")


@dataclass(frozen=True)
class PacketTable:
    parameter: Parameter
    form: PureInnerForm
    group: ComponentGroup
    entries: tuple[Character, ...]
    n_phi: int


@dataclass
class FormalCombination:
    """Finitely supported rational combination of packet entries."""

    terms: dict = field(default_factory=dict)

    def add(self, key, coeff) -> None:
        c = self.terms.get(key, Fraction(0)) + Fraction(coeff)
        if c:
            self.terms[key] = c
        else:
            self.terms.pop(key, None)

    def scaled(self, c) -> "FormalCombination":
        out = FormalCombination()
        for k, v in self.terms.items():
            out.add(k, v * c)
        return out

    def __add__(self, other: "FormalCombination") -> "FormalCombination":
        out = FormalCombination(dict(self.terms))
        for k, v in other.terms.items():
            out.add(k, v)
        return out

    def __eq__(self, other):
        if not isinstance(other, FormalCombination):
            return NotImplemented
        return {k: v for k, v in self.terms.items() if v} == {k: v for k, v in other.terms.items() if v}

    def coefficient(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))


def require_discrete(param: Parameter) -> None:
    if validate(param) is not Kind.DISCRETE:
        raise ParameterError("a discrete parameter is required")


def n_phi(group: ComponentGroup) -> int:
    """|A(phi) / Z|."""
    z = center_element(group)
    return group.order // (1 if z.is_identity else 2)


@lru_cache(maxsize=4096)
def enumerate_packet(param: Parameter, form: PureInnerForm) -> PacketTable:
    require_discrete(param)
    check_form(param, form)
    group = component_group(param)
    z = center_element(group)
    h = form.hasse
    entries = tuple(eps for eps in group.characters() if eps(z) == h)
    return PacketTable(param, form, group, entries, n_phi(group))


def evaluate_at(param: Parameter, form: PureInnerForm, s: GroupElement) -> FormalCombination:
    """e(G) * sum over the packet of eps(s) [eps]."""
    table = enumerate_packet(param, form)
    e = form.kottwitz
    out = FormalCombination()
    for eps in table.entries:
        out.add(eps, e * eps(s))
    return out


def transversal(group: ComponentGroup) -> list[GroupElement]:
    """Representatives of A/Z: elements with +1 at the first basis key."""
    z = center_element(group)
    if z.is_identity:
        return list(group.elements())
    first = next(i for i, c in enumerate(z.coords) if c == -1)
    return [s for s in group.elements() if s.coords[first] == 1]


def invert(param: Parameter, form: PureInnerForm, eps: Character) -> dict[GroupElement, Fraction]:
    """Coefficients eps(s)/n(phi) over the fixed transversal of A/Z."""
    table = enumerate_packet(param, form)
    if eps not in table.entries:
        raise ValueError(f"character {eps} is not in the packet on this form")
    n = table.n_phi
    return {s: Fraction(eps(s), n) for s in transversal(table.group)}


def recombine(param: Parameter, form: PureInnerForm, coeffs: Mapping[GroupElement, Fraction]) -> FormalCombination:
    """sum_s coeffs[s] * evaluate_at(s), accumulated in place."""
    table = enumerate_packet(param, form)
    e = form.kottwitz
    # eps(s) is the parity of the overlap of their -1 positions
    # integer numerators over a common denominator
    fracs = {s: Fraction(c) * e for s, c in coeffs.items()}
    den = lcm(1, *(c.denominator for c in fracs.values()))
    masks = [(eps, _minus_mask(eps.values)) for eps in table.entries]
    totals = dict.fromkeys(table.entries, 0)
    for s, c in fracs.items():
        num = c.numerator * (den // c.denominator)
        sm = _minus_mask(s.coords)
        for eps, em in masks:
            totals[eps] += -num if (em & sm).bit_count() % 2 else num
    return FormalCombination({eps: Fraction(v, den) for eps, v in totals.items() if v})


def _minus_mask(signs) -> int:
    return sum(1 << i for i, v in enumerate(signs) if v == -1)


def endoscopic_transfer_key(param: Parameter, s: GroupElement) -> tuple[Parameter, Parameter]:
    split = canonical_split(component_group(param), s)
    return split.plus, split.minus
