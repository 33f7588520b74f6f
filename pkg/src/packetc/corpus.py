"""Random discrete parameters for batch runs and experiments."""

from __future__ import annotations

import os
import random

from .parameters import CuspidalLabel, GroupKind, JordanBlock, Parameter, Parity, good_parity

DEFAULT_LABELS = (
    CuspidalLabel("1", 1, Parity.ORTHOGONAL, 1),
    CuspidalLabel("xi", 1, Parity.ORTHOGONAL, 2),
    CuspidalLabel("eta", 1, Parity.ORTHOGONAL, -1),
    CuspidalLabel("sp2", 2, Parity.SYMPLECTIC),
    CuspidalLabel("o2", 2, Parity.ORTHOGONAL, 3),
)


def seeded_rng(seed: int | None = None) -> random.Random:
    """Seed from the argument, else PACKETC_SEED, else 0."""
    if seed is None:
        seed = int(os.environ.get("PACKETC_SEED", "0"))
    return random.Random(seed)


def random_discrete(rng: random.Random, kind=GroupKind.ODD, max_blocks: int = 5, max_a: int = 7,
                    max_N: int | None = None, labels=DEFAULT_LABELS) -> Parameter:
    """A discrete parameter with disc read off the labels; may be empty."""
    kind = GroupKind(kind)
    while True:
        keys = set()
        for _ in range(rng.randint(1, max_blocks)):
            rho = rng.choice(labels)
            choices = [a for a in range(1, max_a + 1) if good_parity((rho, a, 1), kind)]
            if choices:
                keys.add((rho, rng.choice(choices)))
        param = Parameter(kind, tuple(JordanBlock(rho, a) for rho, a in keys))
        disc = param.label_disc()
        if kind is GroupKind.ODD and disc != 1:
            continue
        if param.N % 2 or (max_N is not None and param.N > max_N):
            continue
        return param.with_blocks(param.blocks, disc=disc)
