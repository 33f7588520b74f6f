"""Admissible families of local characters for a formal global parameter.

Localization is input data: for each place v a 0/1 matrix whose column j
is the image of the j-th global basis element in A(psi_v) (1 marks a -1
coordinate).  A family (eps_v) is admissible when prod_v eps_v(loc_v g)
equals the Arthur character on every global generator; the local forms
are then forced by the center values, and the Hasse product formula is
checked on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .component_group import Character, ComponentGroup, GroupElement, center_element, component_group
from .local_forms import (
    FormError,
    Place,
    QuadraticSpace,
    enumerate_spaces,
    normalized_invariant,
    product_formula_check,
    witt_index,
)
from .parameters import Kind, Parameter, validate

SCHEMA = "packetc/1"
MAX_CANDIDATES = 2**20


class SettingError(ValueError):
    pass


def is_regular(param: Parameter) -> bool:
    """No factorization through a proper Levi: the parameter is discrete."""
    return validate(param) is Kind.DISCRETE


@dataclass(frozen=True)
class LocalData:
    place: Place
    parameter: Parameter
    loc: tuple[tuple[int, ...], ...]  # k_v rows, k_global columns

    @property
    def group(self) -> ComponentGroup:
        return component_group(self.parameter)

    def image(self, j: int) -> GroupElement:
        return GroupElement(tuple(-1 if row[j] else 1 for row in self.loc))

    def apply(self, g: GroupElement) -> GroupElement:
        out = [1] * len(self.loc)
        for j, c in enumerate(g.coords):
            if c == -1:
                out = [x * y for x, y in zip(out, self.image(j).coords)]
        return GroupElement(tuple(out))


@dataclass(frozen=True)
class GlobalSetting:
    global_parameter: Parameter
    places: tuple[LocalData, ...]
    arthur: Character | None = None
    # the even orthogonal archimedean side condition is attested, not computed
    archimedean_attested: bool = False

    def __post_init__(self):
        validate(self.global_parameter)
        k = self.global_group.k
        if self.arthur is None:
            object.__setattr__(self, "arthur", self.global_group.trivial_character())
        if len(self.arthur.values) != k:
            raise SettingError("arthur character does not fit the global group")
        seen = set()
        for data in self.places:
            if data.place in seen:
                raise SettingError(f"place {data.place} listed twice")
            seen.add(data.place)
            validate(data.parameter)
            if data.parameter.kind is not self.global_parameter.kind:
                raise SettingError(f"group kind differs at {data.place}")
            if data.parameter.N != self.global_parameter.N:
                raise SettingError(f"local parameter at {data.place} has the wrong dimension")
            kv = data.group.k
            if len(data.loc) != kv or any(len(row) != k for row in data.loc):
                raise SettingError(f"loc map at {data.place} must be {kv} x {k}")
            if any(x not in (0, 1) for row in data.loc for x in row):
                raise SettingError(f"loc map at {data.place} must have 0/1 entries")

    @property
    def global_group(self) -> ComponentGroup:
        return component_group(self.global_parameter)

    def center_compatible(self) -> bool:
        """Does every loc_v send the global center to the local one?"""
        z = center_element(self.global_group)
        return all(d.apply(z) == center_element(d.group) for d in self.places)

    def candidate_count(self) -> int:
        return 2 ** sum(d.group.k for d in self.places)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "global": self.global_parameter.to_json(),
            "arthur": list(self.arthur.values),
            "archimedean_attested": self.archimedean_attested,
            "places": [
                {"place": d.place.to_json(), "parameter": d.parameter.to_json(), "loc": [list(r) for r in d.loc]}
                for d in self.places
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "GlobalSetting":
        glob = Parameter.from_json(obj["global"])
        places = []
        for i, raw in enumerate(obj.get("places", [])):
            try:
                places.append(
                    LocalData(
                        Place.parse(raw["place"]),
                        Parameter.from_json(raw["parameter"]),
                        tuple(tuple(int(x) for x in row) for row in raw["loc"]),
                    )
                )
            except KeyError as exc:
                raise SettingError(f"places[{i}] is missing {exc}") from exc
        arthur = obj.get("arthur")
        return cls(
            glob,
            tuple(places),
            None if arthur is None else Character(tuple(int(x) for x in arthur)),
            bool(obj.get("archimedean_attested", False)),
        )


def local_form(data: LocalData, hasse: int) -> QuadraticSpace:
    """The form at v whose normalized invariant is ``hasse``.

    At R several signatures qualify; the one of largest Witt index is taken
    (then the one with more positive squares).
    """
    dim = data.parameter.group_dim
    disc = data.parameter.disc
    if not data.place.is_real:
        return QuadraticSpace.with_normalized_hasse(data.place, dim, disc, hasse)
    options = [s for s in enumerate_spaces(data.place, dim, disc) if normalized_invariant(s) == hasse]
    if not options:
        raise FormError(f"no real form of dim {dim} with invariant {hasse}")
    return max(options, key=lambda s: (witt_index(s), s.signature[0]))


@dataclass(frozen=True)
class Family:
    eps: tuple[Character, ...]
    forms: tuple[QuadraticSpace, ...] = field(default=())

    def to_json(self, setting: GlobalSetting) -> dict:
        return {
            "places": [
                {"place": d.place.to_json(), "eps": list(e.values), "form": f.to_json()}
                for d, e, f in zip(setting.places, self.eps, self.forms)
            ]
        }


def family_for(setting: GlobalSetting, eps: Sequence[Character]) -> Family:
    """Attach the forms forced by the center values."""
    if len(eps) != len(setting.places):
        raise SettingError("family has the wrong number of places")
    forms = []
    for data, e in zip(setting.places, eps):
        if len(e.values) != data.group.k:
            raise SettingError(f"character at {data.place} has the wrong length")
        forms.append(local_form(data, e(center_element(data.group))))
    return Family(tuple(eps), tuple(forms))


def pullback(setting: GlobalSetting, eps: Sequence[Character]) -> Character:
    """prod_v eps_v o loc_v as a character of the global group."""
    if len(eps) != len(setting.places):
        raise SettingError("family has the wrong number of places")
    values = []
    for j in range(setting.global_group.k):
        v = 1
        for data, e in zip(setting.places, eps):
            if len(e.values) != data.group.k:
                raise SettingError(f"character at {data.place} has the wrong length")
            v *= e(data.image(j))
        values.append(v)
    return Character(tuple(values))


def is_admissible(setting: GlobalSetting, family) -> bool:
    eps = family.eps if isinstance(family, Family) else tuple(family)
    return pullback(setting, eps) == setting.arthur


def passes_product_formula(setting: GlobalSetting, family: Family) -> bool:
    if not family.forms:
        family = family_for(setting, family.eps)
    spaces = {d.place: f for d, f in zip(setting.places, family.forms)}
    return product_formula_check(spaces, setting.global_parameter.disc)


def _candidates(setting: GlobalSetting):
    n = setting.candidate_count()
    if n > MAX_CANDIDATES:
        raise SettingError(f"{n} candidate families exceeds the limit of {MAX_CANDIDATES}")
    per_place = [list(d.group.characters()) for d in setting.places]
    return product(*per_place)


def kernel(setting: GlobalSetting) -> list[tuple[Character, ...]]:
    """Families whose pullback is trivial."""
    trivial = setting.global_group.trivial_character()
    return [eps for eps in _candidates(setting) if pullback(setting, eps) == trivial]


def enumerate_admissible(setting: GlobalSetting) -> list[Family]:
    out = []
    for eps in _candidates(setting):
        if not is_admissible(setting, eps):
            continue
        try:
            family = family_for(setting, eps)
        except FormError:
            continue
        if passes_product_formula(setting, family):
            out.append(family)
    return out


def multiplicity_table(setting: GlobalSetting) -> dict[tuple, int]:
    admissible = {f.eps for f in enumerate_admissible(setting)}
    return {eps: int(eps in admissible) for eps in _candidates(setting)}


def is_kernel_coset(setting: GlobalSetting, families: Sequence[Family]) -> bool:
    """Is the set of families empty or a translate of the kernel?"""
    if not families:
        return True
    found = {f.eps for f in families}
    base = families[0].eps
    shifted = {tuple(b * k for b, k in zip(base, ker)) for ker in kernel(setting)}
    return found == shifted
