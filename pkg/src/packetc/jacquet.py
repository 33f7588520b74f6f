"""Jacquet-module combinatorics on (phi, eps) pairs and cuspidal support."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .component_group import Character, center_element, component_group
from .local_forms import FormError, QuadraticSpace
from .packets import PureInnerForm, check_form, require_discrete
from .parameters import CuspidalLabel, JordanBlock, Parameter


@dataclass(frozen=True)
class PacketMember:
    parameter: Parameter
    character: Character
    form: PureInnerForm

    def __post_init__(self):
        check_form(self.parameter, self.form)
        group = component_group(self.parameter)
        if len(self.character.values) != group.k:
            raise ValueError("character does not fit the component group")
        if self.character(center_element(group)) != self.form.hasse:
            raise ValueError("character's center value does not match the form's Hasse invariant")

    @property
    def eps(self) -> dict[tuple[str, int], int]:
        """eps as a function on Jord: (rho name, a) -> sign."""
        group = component_group(self.parameter)
        return {(key[0].name, key[1]): v for key, v in zip(group.basis, self.character.values)}


def shrink_form(form: PureInnerForm, by: int) -> PureInnerForm:
    """Remove ``by`` hyperbolic planes, keeping disc and normalized Hasse."""
    s = form.space
    try:
        return PureInnerForm(QuadraticSpace.with_normalized_hasse(s.place, s.dim - 2 * by, s.disc, form.hasse))
    except FormError as exc:
        raise FormError(f"no form of dim {s.dim - 2 * by} with these invariants; labels inconsistent with disc") from exc


# A discrete member is handled as a sorted tuple of (rho, a, eps) triples.
State = tuple


def member_state(member: PacketMember) -> State:
    eps = member.eps
    return tuple(sorted(((blk.rho, blk.a, eps[(blk.rho.name, blk.a)]) for blk in member.parameter.blocks), key=_order))


def _order(t):
    return (t[0].name, t[1])


def state_member(state: State, like: PacketMember, form: PureInnerForm) -> PacketMember:
    param = like.parameter.with_blocks(JordanBlock(rho, a) for rho, a, _ in state)
    group = component_group(param)
    values = {(rho.name, a): e for rho, a, e in state}
    char = Character(tuple(values[(key[0].name, key[1])] for key in group.basis))
    return PacketMember(param, char, form)


def _lookup(state: State, rho: CuspidalLabel, a: int):
    for r, b, e in state:
        if r == rho and b == a:
            return e
    return None


def jac(member: PacketMember, rho: CuspidalLabel, x) -> PacketMember | None:
    """Jac_{rho|.|^x}; None stands for the zero module.

    The result is tempered but not discrete when (rho, a-2) was already in
    Jord, since (rho, a-2) then occurs twice.
    """
    require_discrete(member.parameter)
    x = Fraction(x)
    if x <= 0 or (2 * x).denominator != 1:
        return None
    a = int(2 * x + 1)
    state = member_state(member)
    e = _lookup(state, rho, a)
    if e is None:
        return None
    below = _lookup(state, rho, a - 2)
    if below is None and a > 2:
        blocks = [(r, b - 2 if (r == rho and b == a) else b, s) for r, b, s in state]
        return state_member(tuple(blocks), member, shrink_form(member.form, rho.d))
    if below is not None and below == e:
        rest = [JordanBlock(r, b) for r, b, _ in state if not (r == rho and b == a)]
        rest.append(JordanBlock(rho, a - 2))
        param = member.parameter.with_blocks(rest)
        group = component_group(param)
        values = {(r.name, b): s for r, b, s in state}
        char = Character(tuple(values[(k[0].name, k[1])] for k in group.basis))
        return PacketMember(param, char, shrink_form(member.form, rho.d))
    if a == 2 and e == 1:
        blocks = tuple(t for t in state if not (t[0] == rho and t[1] == a))
        return state_member(blocks, member, shrink_form(member.form, rho.d))
    return None


def jac_points(param: Parameter) -> Iterator[tuple[CuspidalLabel, Fraction]]:
    """All (rho, x) at which some Jac could be nonzero."""
    for blk in param.blocks:
        if blk.a >= 2:
            yield blk.rho, Fraction(blk.a - 1, 2)


def has_holes(param: Parameter) -> bool:
    keys = {(blk.rho, blk.a) for blk in param.blocks}
    return any(a > 2 and (rho, a - 2) not in keys for rho, a in keys)


def is_alternating(member: PacketMember) -> bool:
    eps = member.eps
    for (name, a), e in eps.items():
        if a < 2:
            continue
        below = 1 if a == 2 else eps.get((name, a - 2))
        if below is not None and below == e:
            return False
    return True


def is_cuspidal(member: PacketMember) -> bool:
    require_discrete(member.parameter)
    return not has_holes(member.parameter) and is_alternating(member)


@dataclass(frozen=True)
class Step:
    kind: str  # "hole", "pair" or "drop"
    rho: CuspidalLabel
    a: int


def reduction_steps(state: State) -> list[Step]:
    steps = []
    for rho, a, e in state:
        if a < 2:
            continue
        below = _lookup(state, rho, a - 2)
        if below is not None:
            if below == e:
                steps.append(Step("pair", rho, a))
        elif a > 2:
            steps.append(Step("hole", rho, a))
        elif e == 1:
            steps.append(Step("drop", rho, a))
    return steps


def apply_step(state: State, step: Step) -> tuple[State, list[tuple[CuspidalLabel, Fraction]]]:
    rho, a = step.rho, step.a
    top = Fraction(a - 1, 2)
    if step.kind == "hole":
        new = tuple(sorted(((r, b - 2 if (r == rho and b == a) else b, s) for r, b, s in state), key=_order))
        return new, [(rho, top)]
    if step.kind == "pair":
        new = tuple(t for t in state if not (t[0] == rho and t[1] in (a, a - 2)))
        # then the doubled (rho, a-2) is a GL segment with a-2 cuspidal factors
        segment = [(rho, Fraction(a - 3, 2) - j) for j in range(a - 2)]
        return new, [(rho, top)] + segment
    new = tuple(t for t in state if not (t[0] == rho and t[1] == a))
    return new, [(rho, top)]


def _step_priority(step: Step):
    return (-step.a, step.rho.name)


@dataclass(frozen=True)
class CuspidalSupport:
    """``r`` is the semisimple rank consumed, (N - N_c)/2; ``levi_rank`` is
    the number of GL(d_rho) factors of the cuspidal Levi."""

    cuspidal_pair: PacketMember
    gl_segments: tuple[tuple[str, Fraction], ...]
    r: int
    levi_rank: int


def reduce_state(state: State, choose=None) -> tuple[State, list]:
    consumed = []
    while True:
        steps = reduction_steps(state)
        if not steps:
            return state, consumed
        step = choose(steps) if choose else min(steps, key=_step_priority)
        state, recs = apply_step(state, step)
        consumed += recs


def cuspidal_support(member: PacketMember) -> CuspidalSupport:
    require_discrete(member.parameter)
    final, consumed = reduce_state(member_state(member))
    r = sum(rho.d for rho, _ in consumed)
    pair = state_member(final, member, shrink_form(member.form, r))
    return CuspidalSupport(pair, tuple((rho.name, x) for rho, x in consumed), r, len(consumed))


def all_reductions(state: State) -> set[tuple[State, int, int]]:
    """Terminal (state, r, levi_rank) over every order of reduction steps."""
    out = set()
    seen = {}

    def walk(st, r, n):
        if (st, r, n) in seen:
            return
        seen[(st, r, n)] = True
        steps = reduction_steps(st)
        if not steps:
            out.add((st, r, n))
            return
        for step in steps:
            new, recs = apply_step(st, step)
            walk(new, r + sum(rho.d for rho, _ in recs), n + len(recs))

    walk(state, 0, 0)
    return out


def count_cuspidals(param: Parameter, form: PureInnerForm) -> int:
    """Alternating characters with the form's center value; 0 with holes."""
    require_discrete(param)
    check_form(param, form)
    if has_holes(param):
        return 0
    group = component_group(param)
    z = center_element(group)
    count = 0
    for eps in group.characters():
        if eps(z) != form.hasse:
            continue
        values = {(k[0].name, k[1]): v for k, v in zip(group.basis, eps.values)}
        ok = True
        for (name, a), v in values.items():
            if a >= 2 and v == (1 if a == 2 else values[(name, a - 2)]):
                ok = False
                break
        count += ok
    return count
