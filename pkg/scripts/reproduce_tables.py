"""Reproduce the stabilizer-index table, the fibration tables and the orbit tables.

    python scripts/reproduce_tables.py            # desk set (a few minutes)
    python scripts/reproduce_tables.py --full     # every stored orbit table
"""

import argparse
import time

from enriques_lattice import enriques, polarizations as pol
from enriques_lattice.cli import factor
from enriques_lattice.reference_tables import ORBIT_TABLES, DESK_BLOCKS, FIBRATIONS, STRETCH_BLOCKS


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--full", action="store_true")
    args = ap.parse_args()

    print("stabilizer indices")
    for row in pol.table1():
        print(f"  h^2={row.hsq:<2} phi={row.phi if row.phi is not None else '-':<2} "
              f"index={factor(row.index):<16} {'ok' if row.ok else 'MISMATCH'}")

    print("fibrations")
    for name in enriques.presets():
        rows = enriques.group_fibrations(enriques.fibration_classes(enriques.preset(name)))
        ref = FIBRATIONS.get(name)
        status = "" if ref is None else ("ok" if rows == sorted(ref) else "MISMATCH")
        print(f"  {name:<8} {rows} {status}")

    print("orbit tables")
    for key in DESK_BLOCKS + (STRETCH_BLOCKS if args.full else []):
        t = time.perf_counter()
        res = pol.polarization_orbits(enriques.preset(key[0]), pol.find_h(key[1], key[2]))
        got = sorted((r.singularities, r.orbit_count, r.r) for r in res.grouped())
        status = "ok" if got == sorted(ORBIT_TABLES[key]) else "MISMATCH"
        print(f"  {key[0]:<4} h^2={key[1]:<2} phi={key[2]}  {len(res.space):>8} double cosets  "
              f"{status}  {time.perf_counter() - t:.0f}s", flush=True)


if __name__ == "__main__":
    main()
