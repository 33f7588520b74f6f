"""Signs attached to the Aubert involution and the unipotent packet map.

The involution itself is never built.  What is computed is its effect on
packet indices: t(phi) = (-1)^(a_G* - r), the relative signs sigma(eps), the
twist character eps_phi and the translation eps -> eps * eps_phi.
"""

from __future__ import annotations

from dataclasses import dataclass

from .component_group import (
    Character,
    ComponentGroup,
    GroupElement,
    canonical_split,
    center_element,
    component_group,
)
from .jacquet import reduce_state
from .local_forms import Place, quasi_split_space, witt_index
from .packets import PureInnerForm, enumerate_packet, inner_forms, require_discrete
from .parameters import GroupKind, JordanBlock, Kind, Parameter, ParameterError, dual_parameter, good_parity, validate


class Unsupported(Exception):
    """A case the bookkeeping does not cover (CLI exit code 3)."""


def _place(place) -> Place:
    return place if isinstance(place, Place) else Place(place)


def split_rank(param: Parameter, place=3) -> int:
    """a_G*: Witt index of the quasi-split form for ``param``."""
    place = _place(place)
    return witt_index(quasi_split_space(place, param.group_dim, param.disc))


def levi_rank(param: Parameter, eps: Character | None = None) -> int:
    """Number of GL(d_rho) factors in the cuspidal support of pi(phi)_eps.

    Tempered parameters are reduced to their discrete support: each of the
    q copies of a GL block (rho, a) contributes a cuspidal factors.
    """
    if not param.is_tempered:
        raise ParameterError("levi_rank needs a tempered parameter")
    group = component_group(param)
    eps = eps or group.trivial_character()
    values = dict(zip(group.basis, eps.values))
    state = []
    gl = 0
    for blk in param.blocks:
        if good_parity(blk, param.kind):
            q, r = divmod(blk.mult, 2)
            if r:
                state.append((blk.rho, blk.a, values[blk.key]))
        else:
            q = blk.mult // 2
        gl += q * blk.a
    state = tuple(sorted(state, key=lambda t: (t[0].name, t[1])))
    _, consumed = reduce_state(state)
    return gl + len(consumed)


def t_value(param: Parameter, place=3) -> int:
    """t(phi) for a tempered parameter on its quasi-split group."""
    e = split_rank(param, place) - levi_rank(param)
    return -1 if e % 2 else 1


@dataclass(frozen=True)
class DualitySigns:
    t: int
    r_table: dict
    a_gstar: int


def t_sign(param: Parameter, place=3) -> DualitySigns:
    """t(phi) and the r-values of every packet character.

    The table covers the packets on all pure inner forms: r is defined by
    the Jacquet combinatorics, which never looks at the form.
    """
    require_discrete(param)
    place = _place(place)
    r_table = {}
    for form in inner_forms(param, place):
        for eps in enumerate_packet(param, form).entries:
            r_table[eps] = levi_rank(param, eps)
    a = split_rank(param, place)
    r1 = r_table[component_group(param).trivial_character()]
    return DualitySigns(-1 if (a - r1) % 2 else 1, r_table, a)


def sigma_sign(param: Parameter, eps: Character, place=3) -> int:
    """(-1)^(r(trivial) - r(eps))."""
    signs = t_sign(param, place)
    if eps not in signs.r_table:
        raise ValueError(f"{eps} is not a character of A(phi)")
    trivial = Character((1,) * len(eps.values))
    e = signs.r_table[trivial] - signs.r_table[eps]
    return -1 if e % 2 else 1


def top_block_reduction(param: Parameter) -> Parameter:
    """Replace every block with the largest a by (rho, a-2); R[0] is dropped."""
    if not param.blocks:
        return param
    top = max(blk.a for blk in param.blocks)
    blocks = []
    for blk in param.blocks:
        if blk.a == top:
            if top > 2:
                blocks.append(JordanBlock(blk.rho, top - 2, blk.b, blk.mult))
        else:
            blocks.append(blk)
    return param.with_blocks(blocks)


def _key_dims(group: ComponentGroup) -> list[int]:
    return [group.parent.mult(key) * key[0].d * key[1] * key[2] for key in group.basis]


def is_endoscopic(group: ComponentGroup, s: GroupElement) -> bool:
    """Does s split the parameter into two factors of group-compatible size?

    For odd orthogonal groups every s does.  For even orthogonal groups the
    minus side must have even dimension: SO(2n) has no SO(odd) x SO(odd)
    endoscopic factors.
    """
    if group.parent.kind is GroupKind.ODD:
        return True
    return sum(d for d, c in zip(_key_dims(group), s.coords) if c == -1) % 2 == 0


def epsilon_phi_value(
    param: Parameter, s: GroupElement, place=3, minus_disc: int | None = None, literal: bool = False
) -> int:
    """t(phi) t(phi+) t(phi-), each factor on its own quasi-split group.

    D_G and D_H differ under transfer by (-1)^(a_G* - a_H*).  The default
    includes that sign; it only matters for even orthogonal groups whose
    three discriminants are all nonsquare, where a_G* - a_H* = 1.  With
    literal=True the bare product of the three t values is returned.
    """
    group = component_group(param)
    if not is_endoscopic(group, s):
        raise Unsupported(f"s = {s.coords} splits off an odd-dimensional factor of an even orthogonal group")
    split = canonical_split(group, s, minus_disc)
    value = t_value(param, place) * t_value(split.plus, place) * t_value(split.minus, place)
    if literal:
        return value
    gap = split_rank(param, place) - split_rank(split.plus, place) - split_rank(split.minus, place)
    return -value if gap % 2 else value


def epsilon_phi(param: Parameter, place=3, literal: bool = False) -> Character:
    """The twist character, read off on the basis generators.

    In the even orthogonal case a generator at a key of odd total dimension
    is not endoscopic.  Those generators are paired with the first of them,
    g0, which gives a basis of the endoscopic subgroup together with the
    even-dimension generators; the extension takes the value +1 at g0.
    """
    require_discrete(param)
    group = component_group(param)
    values = []
    odd = [i for i in range(group.k) if not is_endoscopic(group, group.generator(i))]
    for i in range(group.k):
        g = group.generator(i)
        if i not in odd:
            values.append(epsilon_phi_value(param, g, place, literal=literal))
        elif i == odd[0]:
            values.append(1)
        else:
            values.append(epsilon_phi_value(param, g * group.generator(odd[0]), place, literal=literal))
    return Character(tuple(values))


def unipotent_packet(psi: Parameter, form: PureInnerForm) -> dict[Character, Character]:
    """eps -> eps * eps_phi, from characters of A(psi) with the form's center
    value to the tempered packet of the dual parameter."""
    if validate(psi) not in (Kind.UNIPOTENT, Kind.DISCRETE):
        raise Unsupported("psi must be unipotent")
    if not psi.is_unipotent:
        raise Unsupported("psi must be unipotent")
    phi = dual_parameter(psi)
    if validate(phi) is not Kind.DISCRETE:
        raise Unsupported("the dual of psi is not discrete")
    gpsi = component_group(psi)
    gphi = component_group(phi)
    # key bijection (rho, a, b) <-> (rho, b, a) preserves the sorted order
    # only up to relabeling, so go through the keys explicitly
    pos = {(k[0], k[2], k[1]): i for i, k in enumerate(gphi.basis)}
    twist = epsilon_phi(phi, form.place)
    h = form.hasse
    z = center_element(gpsi)
    out = {}
    for eps in gpsi.characters():
        if eps(z) != h:
            continue
        moved = [0] * gphi.k
        for key, v in zip(gpsi.basis, eps.values):
            moved[pos[key]] = v
        out[eps] = Character(tuple(moved)) * twist
    return out
