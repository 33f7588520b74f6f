"""Tempered parameters: discrete support, Levi transfer and R-group counts.

A tempered phi factors through a Levi M = GL x ... x GL x G_c: each key
with mult = 2q + r gives q GL(d a) factors and r copies to the discrete
support.  Characters of A(phi) extending a fixed character of the
odd-multiplicity subgroup A_M(phi) come in groups of 2^l, one per element
of the R-group (Z/2)^l.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .component_group import Character, center_element, component_group
from .packets import PureInnerForm, check_form
from .parameters import JordanBlock, Kind, Parameter, ParameterError, good_parity, validate


@dataclass(frozen=True)
class TemperedDecomposition:
    gl_part: tuple[tuple, ...]  # (rho, a, q)
    discrete_support: Parameter
    ell: int

    @property
    def gl_rank(self) -> int:
        """Hyperbolic planes needed for the GL factors: sum of q d a."""
        return sum(q * rho.d * a for rho, a, q in self.gl_part)


def _require_tempered(param: Parameter) -> None:
    if validate(param) not in (Kind.DISCRETE, Kind.TEMPERED):
        raise ParameterError("a tempered parameter is required")


def decompose(param: Parameter) -> TemperedDecomposition:
    _require_tempered(param)
    gl, support, ell = [], [], 0
    for blk in param.blocks:
        if good_parity(blk, param.kind):
            q, r = divmod(blk.mult, 2)
            if r == 0:
                ell += 1
            if r:
                support.append(JordanBlock(blk.rho, blk.a))
        else:
            # conjugate pairs: mult copies make mult/2 GL factors
            q = blk.mult // 2
        if q:
            gl.append((blk.rho, blk.a, q))
    return TemperedDecomposition(tuple(gl), param.with_blocks(support), ell)


def reassemble(dec: TemperedDecomposition) -> Parameter:
    """Inverse of decompose: mult = 2q + r on every key."""
    mult = Counter()
    for blk in dec.discrete_support.blocks:
        mult[blk.key] += blk.mult
    for rho, a, q in dec.gl_part:
        mult[(rho, a, 1)] += 2 * q
    blocks = [JordanBlock(rho, a, b, m) for (rho, a, b), m in mult.items()]
    return dec.discrete_support.with_blocks(blocks)


def levi_transfers(param: Parameter, form: PureInnerForm) -> bool:
    check_form(param, form)
    return form.witt >= decompose(param).gl_rank


def odd_keys(param: Parameter) -> list:
    """Basis keys spanning A_M(phi)."""
    return [key for key in component_group(param).basis if param.mult(key) % 2]


def restrict_to_levi(param: Parameter, eps: Character) -> tuple:
    """eps_M: the values of eps on the odd-multiplicity keys."""
    group = component_group(param)
    return tuple(v for key, v in zip(group.basis, eps.values) if param.mult(key) % 2)


def constituents(param: Parameter, form: PureInnerForm) -> list[Character]:
    """Characters of A(phi) indexing the tempered constituents on ``form``."""
    _require_tempered(param)
    if not levi_transfers(param, form):
        return []
    group = component_group(param)
    z = center_element(group)
    h = form.hasse
    return [eps for eps in group.characters() if eps(z) == h]


def extension_counts(param: Parameter, form: PureInnerForm) -> dict[tuple, int]:
    """eps_M -> number of constituents extending it, over all eps_M."""
    n_odd = len(odd_keys(param))
    counts = {}
    for bits in range(2**n_odd):
        counts[tuple(-1 if bits >> i & 1 else 1 for i in range(n_odd))] = 0
    for eps in constituents(param, form):
        counts[restrict_to_levi(param, eps)] += 1
    return counts


def rgroup(param: Parameter) -> int:
    """l, so that the R-group is (Z/2)^l."""
    return decompose(param).ell
