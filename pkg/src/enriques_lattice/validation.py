"""Invariant suites behind ``enriques-lattice validate``."""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import e10, enriques, f2q, groups, polarizations
from .intlattice import determinant
from .reference_tables import ORBIT_TABLES, DESK_BLOCKS, FIBRATIONS, STRETCH_BLOCKS


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float


def parity_table() -> np.ndarray:
    x = np.arange(f2q.NPOINTS)
    bits = (x[:, None] >> np.arange(f2q.DIM)) & 1
    return (bits.sum(axis=1) & 1).astype(np.uint8)


def polar_identity_failures() -> int:
    """Pairs ``(x, y)`` violating ``q(x+y) = q(x) + q(y) + b(x, y)`` (all 1024^2)."""
    q = np.array([f2q.q(x) for x in range(f2q.NPOINTS)], dtype=np.uint8)
    pol = np.array([f2q.polar(y) for y in range(f2q.NPOINTS)])
    par = parity_table()
    x = np.arange(f2q.NPOINTS)[:, None]
    y = np.arange(f2q.NPOINTS)[None, :]
    lhs = q[x ^ y]
    rhs = q[x] ^ q[y] ^ par[x & pol[y]]
    return int((lhs != rhs).sum())


def check_census() -> tuple[bool, str]:
    iso, aniso = len(f2q.isotropic_vectors()), len(f2q.anisotropic_vectors())
    return (iso, aniso) == (527, 496), f"{iso} isotropic, {aniso} anisotropic"


def check_polar() -> tuple[bool, str]:
    bad = polar_identity_failures()
    return bad == 0, f"{bad} failing pairs out of {f2q.NPOINTS ** 2}"


def check_e10() -> tuple[bool, str]:
    problems = []
    if abs(determinant(e10.GRAM.tolist())) != 1:
        problems.append("Gram matrix is not unimodular")
    v = e10.weyl_vector()
    if e10.norm(v) != 1240 or any(e10.inner(v, e10.unit(i)) != 1 for i in range(1, 11)):
        problems.append("Weyl vector")
    for i in range(1, e10.RANK + 1):
        m = e10.simple_reflection(i)
        if not e10.preserves_gram(m):
            problems.append(f"s{i} does not preserve the Gram matrix")
        red = e10.mod2_matrix(m)
        if not red.is_isometry() or red != f2q.transvection(f2q.unit(i)):
            problems.append(f"s{i} mod 2 is not the isometry t{i}")
    return not problems, "; ".join(problems) or "reflections are isometries, mod 2 = transvections"


def check_group_order() -> tuple[bool, str]:
    order = groups.full_group_order()
    formula = groups.full_group_order_formula()
    stab = groups.bsgs(groups.stabilizer(groups.simple_generators(), f2q.isotropic_vectors()[0], order))
    idx = order // stab.order()
    ok = order == formula == 2**21 * 3**5 * 5**2 * 7 * 17 * 31 and idx == 527
    return ok, f"|G| = {order}, formula {formula}, isotropic stabilizer index {idx}"


def check_orbit_stabilizer(pairs: int = 20, seed: int = 0) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    gens_all = groups.simple_generators()
    bad = 0
    for _ in range(pairs):
        k = int(rng.integers(1, 6))
        idx = sorted(int(i) for i in rng.choice(10, size=k, replace=False))
        gens = [gens_all[i] for i in idx]
        x = int(rng.integers(1, f2q.NPOINTS))
        order = groups.bsgs(gens).order()
        orb = groups.orbit(gens, x)
        stab = groups.bsgs(groups.stabilizer(gens, x, order)).order()
        bad += len(orb) * stab != order
    return bad == 0, f"{pairs - bad}/{pairs} subgroup/point pairs satisfy |orbit|*|stab| = |G|"


def check_fibrations(random_models: int = 50, seed: int = 0) -> tuple[bool, str]:
    problems = []
    for name, m in enriques.presets().items():
        classes = enriques.fibration_classes(m)
        if sum(c.weight for c in classes) != 527:
            problems.append(f"{name}: weights do not sum to 527")
        if name in FIBRATIONS and enriques.group_fibrations(classes) != sorted(FIBRATIONS[name]):
            problems.append(f"{name}: rows differ from the reference")
    rng = np.random.default_rng(seed)
    for _ in range(random_models):
        m = enriques.surface_from_roots(enriques.random_root_sublattice(rng))
        if sum(c.weight for c in enriques.fibration_classes(m)) != 527:
            problems.append(f"random {m.label}: weights do not sum to 527")
    return not problems, "; ".join(problems) or f"6 presets and {random_models} random models sum to 527"


def splitting_disagreements(m: enriques.SurfaceModel, bound: int = 3) -> tuple[int, int]:
    roots = enriques.bounded_roots(bound)
    mr = enriques.build_mr(m)
    packed = enriques.pack_mod2(roots)
    split = np.isin(packed, np.array(sorted(mr.split_classes), dtype=np.int64))
    member = m.delta_table[packed].astype(bool)
    return int((split != member).sum()), len(roots)


def check_splitting(bound: int = 3) -> tuple[bool, str]:
    parts = []
    ok = True
    for name, m in enriques.presets().items():
        bad, n = splitting_disagreements(m, bound)
        ok &= bad == 0
        parts.append(f"{name}: {bad}/{n}")
    return ok, "disagreements " + ", ".join(parts)


def check_table1() -> tuple[bool, str]:
    rows = polarizations.table1()
    bad = [f"({r.hsq},{r.phi})" for r in rows if not r.ok]
    return not bad, f"{len(rows) - len(bad)}/{len(rows)} rows exact" + (f"; wrong: {bad}" if bad else "")


def reconcile_isotropic(m: enriques.SurfaceModel) -> bool:
    res = polarizations.polarization_orbits(m, polarizations.find_h(0))
    weights = Counter(c.weight for c in enriques.fibration_classes(m))
    return Counter(res.space.sizes.tolist()) == weights


def check_reconciliation() -> tuple[bool, str]:
    bad = [name for name, m in enriques.presets().items() if not reconcile_isotropic(m)]
    return not bad, "all presets agree" if not bad else f"disagree: {bad}"


def orbit_table_block(key: tuple[str, int, int]) -> tuple[bool, str]:
    name, hsq, phi = key
    res = polarizations.polarization_orbits(enriques.preset(name), polarizations.find_h(hsq, phi))
    got = sorted((row.singularities, row.orbit_count, row.r) for row in res.grouped())
    ok = got == sorted(ORBIT_TABLES[key]) and res.weighted_sum() == polarizations.STABILIZER_INDICES[(hsq, phi)]
    return ok, f"{len(got)} rows, weighted sum {res.weighted_sum()}"


def _checks(level: str) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    out = [
        ("f2 census", check_census),
        ("polar identity", check_polar),
        ("e10 isometries", check_e10),
        ("group order", check_group_order),
        ("orbit-stabilizer", check_orbit_stabilizer),
        ("fibrations", check_fibrations),
        ("splitting roots", check_splitting),
        ("stabilizer indices", check_table1),
        ("h^2 = 0 reconciliation", check_reconciliation),
    ]
    blocks = [k for k in DESK_BLOCKS if k[1] == 2]
    if level == "full":
        blocks = DESK_BLOCKS + STRETCH_BLOCKS
    for key in blocks:
        out.append((f"orbit table {key[0]} h2={key[1]} phi={key[2]}", lambda key=key: orbit_table_block(key)))
    return out


def run(level: str = "quick", log: Callable[[str], None] = lambda s: None) -> list[CheckResult]:
    results = []
    for name, fn in _checks(level):
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # report, keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, ok, detail, time.perf_counter() - t0))
        log(f"{'PASS' if ok else 'FAIL'} {name}: {detail} [{results[-1].seconds:.1f}s]")
    return results
