"""Compare the two notions of singularities of a polarization h'.

``mod2``:    classes x of Delta-bar with b(x, h'-bar) = 0, typed as a graph.
``lattice``: roots s of h'^perp whose class lies in Delta-bar.

The stored orbit tables are organised by the first; this prints both side by
side so the difference is visible.

    python scripts/singularity_modes.py --tau A1 --hsq 2 --phi 1
"""

import argparse
from collections import Counter

from enriques_lattice import enriques, polarizations as pol


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--tau", default="A1")
    ap.add_argument("--hsq", type=int, default=2)
    ap.add_argument("--phi", type=int, default=1)
    args = ap.parse_args()

    m = enriques.preset(args.tau)
    h = pol.find_h(args.hsq, args.phi)
    by_mode = {}
    for mode in pol.SINGULARITY_MODES:
        res = pol.polarization_orbits(m, h, singularities=mode)
        by_mode[mode] = res.singularity_of_rep
        print(f"{mode}:")
        for row in res.grouped():
            print(f"  {row.singularities:<8} orbits={row.orbit_count:<8} r={row.r}")
    pairs = Counter(zip(by_mode["mod2"], by_mode["lattice"]))
    print("joint distribution (mod2, lattice):")
    for (a, b), n in sorted(pairs.items()):
        print(f"  {a:<8} {b:<8} {n}")


if __name__ == "__main__":
    main()
