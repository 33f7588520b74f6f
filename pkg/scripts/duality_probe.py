"""Probe the two sign identities behind the duality bookkeeping.

1. Top-block reduction: compares t(phi) with t(phi_-), both literally and
   with the correction (-1)^(sum of d+1 over the replaced blocks).
2. Twist character on parameters trivial on SL(2): counts how often the
   bare product t(phi) t(phi+) t(phi-) is nontrivial, against the version
   carrying (-1)^(a_G* - a_H*).

    python scripts/duality_probe.py [--count 400] [--max-n 16] [--seed 0]
"""

import argparse
import sys
from collections import Counter
from itertools import combinations

from packetc.component_group import component_group
from packetc.corpus import random_discrete, seeded_rng
from packetc.duality import epsilon_phi, is_endoscopic, t_value, top_block_reduction
from packetc.parameters import CuspidalLabel, GroupKind, JordanBlock, Parameter, Parity


def reduction_table(count, max_n, seed):
    rng = seeded_rng(seed)
    tally = Counter()
    for i in range(count):
        kind = GroupKind.ODD if i % 2 == 0 else GroupKind.EVEN
        phi = random_discrete(rng, kind, max_blocks=5, max_N=max_n)
        if not phi.blocks or max(b.a for b in phi.blocks) < 3:
            continue
        top = max(b.a for b in phi.blocks)
        parity = "even d" if any(b.rho.d % 2 == 0 for b in phi.blocks if b.a == top) else "odd d"
        lhs, rhs = t_value(phi), t_value(top_block_reduction(phi))
        sign = (-1) ** sum(b.rho.d + 1 for b in phi.blocks if b.a == top)
        tally[parity, "literal", lhs == rhs] += 1
        tally[parity, "corrected", lhs == sign * rhs] += 1
    return tally


def a_one_labels():
    dets = (1, 2, -1, 3, 5, 6, -3)
    out = [CuspidalLabel(f"o{i}", 1, Parity.ORTHOGONAL, d) for i, d in enumerate(dets)]
    out += [CuspidalLabel(f"q{i}", 2, Parity.ORTHOGONAL, d) for i, d in enumerate(dets)]
    return out


def twist_table(max_blocks=4):
    tally = Counter()
    for k in range(1, max_blocks + 1):
        for labels in combinations(a_one_labels(), k):
            phi = Parameter(GroupKind.EVEN, tuple(JordanBlock(rho, 1) for rho in labels))
            if phi.N % 2:
                continue
            phi = phi.with_blocks(phi.blocks, disc=phi.label_disc())
            g = component_group(phi)
            if not any(is_endoscopic(g, s) and not s.is_identity for s in g.elements()):
                continue
            literal = epsilon_phi(phi, literal=True)
            tally["literal trivial", all(v == 1 for v in literal.values)] += 1
            tally["with transfer sign trivial", all(v == 1 for v in epsilon_phi(phi).values)] += 1
    return tally


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=400)
    parser.add_argument("--max-n", type=int, default=16)
    parser.add_argument("--seed", type=int)
    args = parser.parse_args(argv)

    print("top-block reduction, t(phi) vs t(phi_-)")
    red = reduction_table(args.count, args.max_n, args.seed)
    for parity in ("odd d", "even d"):
        for how in ("literal", "corrected"):
            ok, bad = red[parity, how, True], red[parity, how, False]
            print(f"  {parity:6s}  {how:9s}  holds {ok:4d}  fails {bad:4d}")

    print("twist character, even orthogonal, all a = 1, multiplicity free")
    tw = twist_table()
    for how in ("literal trivial", "with transfer sign trivial"):
        print(f"  {how:27s}  yes {tw[how, True]:4d}  no {tw[how, False]:4d}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
