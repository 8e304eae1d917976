"""Fibration weights and splitting-root checks on random root sublattices.

    python scripts/random_models.py --count 50 --seed 0
"""

import argparse

import numpy as np

from enriques_lattice import enriques, validation


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--bound", type=int, default=2, help="coordinate bound for the splitting check")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    for _ in range(args.count):
        m = enriques.surface_from_roots(enriques.random_root_sublattice(rng))
        classes = enriques.fibration_classes(m)
        bad, n = validation.splitting_disagreements(m, args.bound)
        print(f"{m.label:<16} classes={len(classes):<4} weight sum={sum(c.weight for c in classes)} "
              f"splitting disagreements={bad}/{n}")


if __name__ == "__main__":
    main()
