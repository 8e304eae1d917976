"""Acceptance criteria 1-8, one PASS/FAIL line each (also repeated in the summary).

Counts are exact.  Wall-clock limits are pinned below; they are generous
for a single core.  Set ENRIQUES_FULL=1 to also reproduce the large orbit
tables (the rest of the A2, 3A1 and E8 blocks).
"""

import os
import time
from collections import Counter

import numpy as np
import pytest

from enriques_lattice import e10, enriques, f2q, groups, polarizations as pol, validation
from enriques_lattice.reference_tables import ORBIT_TABLES, DESK_BLOCKS, FIBRATIONS, STRETCH_BLOCKS

from .conftest import ACCEPTANCE_LINES
from .oracles import closure

CENSUS_SECONDS = 1.0
GROUP_SECONDS = 60.0
INDEX_TABLE_SECONDS = 600.0
RANDOM_MODELS = 50
SPLIT_BOUND = 3
ORBIT_STAB_PAIRS = 20
CHAMBER_WORDS = 100
ADE_MODELS = 30

FULL = os.environ.get("ENRIQUES_FULL") == "1"


def report(criterion, ok, detail):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_f2_census():
    t = time.perf_counter()
    q = np.array([f2q.q(x) for x in range(f2q.NPOINTS)])
    iso = int((q[1:] == 0).sum())
    aniso = int((q == 1).sum())
    dt = time.perf_counter() - t
    ok = (iso, aniso) == (527, 496) and dt < CENSUS_SECONDS
    report(1, ok, f"{iso} isotropic, {aniso} anisotropic in {dt:.3f}s (limit {CENSUS_SECONDS}s)")


def test_criterion_2_group_order():
    t = time.perf_counter()
    gens = groups.simple_generators()
    chain = groups.bsgs(gens)
    order = chain.order()
    x = f2q.isotropic_vectors()[0]
    stab = groups.bsgs(groups.stabilizer(gens, x, order)).order()
    dt = time.perf_counter() - t
    formula = groups.full_group_order_formula()
    ok = order == formula == 46_998_591_897_600 and order // stab == 527 and dt < GROUP_SECONDS
    report(2, ok, f"|G| = {order} (formula {formula}), isotropic stabilizer index {order // stab}, "
                  f"{dt:.1f}s (limit {GROUP_SECONDS:.0f}s)")


def test_criterion_3_fibrations():
    problems = []
    for name, m in enriques.presets().items():
        if sum(c.weight for c in enriques.fibration_classes(m)) != 527:
            problems.append(name)
    rng = np.random.default_rng(20260101)
    for _ in range(RANDOM_MODELS):
        m = enriques.surface_from_roots(enriques.random_root_sublattice(rng))
        if sum(c.weight for c in enriques.fibration_classes(m)) != 527:
            problems.append(m.label)
    for name in ("A1", "2A1"):
        rows = enriques.group_fibrations(enriques.fibration_classes(enriques.preset(name)))
        if rows != sorted(FIBRATIONS[name]):
            problems.append(f"{name} rows")
    report(3, not problems, f"sum 527 for 6 presets and {RANDOM_MODELS} random models; "
                            f"(A1,A1) and (2A1,2A1) rows match" + (f"; failed: {problems}" if problems else ""))


def test_criterion_4_stabilizer_indices():
    t = time.perf_counter()
    rows = pol.table1()
    dt = time.perf_counter() - t
    bad = [(r.hsq, r.phi) for r in rows if not r.ok]
    ok = len(rows) == 11 and not bad and dt < INDEX_TABLE_SECONDS
    report(4, ok, f"{len(rows) - len(bad)}/11 rows exact in {dt:.1f}s (limit {INDEX_TABLE_SECONDS:.0f}s)")


def _block(key):
    name, hsq, phi = key
    res = pol.polarization_orbits(enriques.preset(name), pol.find_h(hsq, phi))
    got = sorted((row.singularities, row.orbit_count, row.r) for row in res.grouped())
    return got == sorted(ORBIT_TABLES[key]) and res.weighted_sum() == pol.STABILIZER_INDICES[(hsq, phi)]


def test_criterion_5_orbit_tables():
    t = time.perf_counter()
    bad = [key for key in DESK_BLOCKS if not _block(key)]
    dt = time.perf_counter() - t
    report(5, not bad, f"{len(DESK_BLOCKS) - len(bad)}/{len(DESK_BLOCKS)} blocks exact "
                       f"((A1,A1) h^2 = 2..10; A2, 3A1, E8 at h^2 = 2) in {dt:.0f}s"
                       + (f"; wrong: {bad}" if bad else ""))


@pytest.mark.slow
@pytest.mark.skipif(not FULL, reason="large tables; set ENRIQUES_FULL=1")
@pytest.mark.parametrize("key", STRETCH_BLOCKS, ids=lambda k: f"{k[0]}-h{k[1]}-phi{k[2]}")
def test_criterion_5_stretch_blocks(key):
    assert _block(key)


def test_criterion_6_splitting_roots():
    parts = []
    total = 0
    for name, m in enriques.presets().items():
        bad, n = validation.splitting_disagreements(m, SPLIT_BOUND)
        total += bad
        parts.append(f"{name} {bad}/{n}")
    report(6, total == 0, f"bound {SPLIT_BOUND}: {total} disagreements ({', '.join(parts)})")


def _orbit_stabilizer_pairs(rng):
    gens_all = groups.simple_generators()
    ok = 0
    for _ in range(ORBIT_STAB_PAIRS):
        k = int(rng.integers(1, 5))
        labels = sorted(int(i) for i in rng.choice(10, size=k, replace=False))
        gens = [gens_all[i] for i in labels]
        x = int(rng.integers(1, f2q.NPOINTS))
        elements = closure([g.perm for g in gens])
        orb = groups.orbit(gens, x)
        brute_stab = sum(1 for g in elements if g[x] == x)
        ok += (len(orb) * groups.bsgs(groups.stabilizer(gens, x)).order() == len(elements)
               and groups.bsgs(groups.stabilizer(gens, x)).order() == brute_stab)
    return ok


def _chamber_idempotence(rng):
    ok = 0
    v = e10.weyl_vector()
    for _ in range(CHAMBER_WORDS):
        a = rng.integers(0, 3, size=10)
        if not a.any():
            a[0] = 1
        h = e10.from_chamber_coords(a.tolist())
        word = rng.integers(1, 11, size=int(rng.integers(0, 30))).tolist()
        x = e10.apply_word(word, h)
        y, w = e10.reduce_to_chamber(x)
        y2, w2 = e10.reduce_to_chamber(y)
        vy, _ = e10.reduce_to_chamber(e10.apply_word(word, v))
        ok += y == h and y2 == y and w2 == () and e10.apply_word(w, x) == y and vy == v
    return ok


def _coset_ids(rng, samples=60):
    """IDs agree exactly when the membership oracle puts both elements in one coset."""
    x = f2q.isotropic_vectors()[3]
    A = groups.bsgs(groups.stabilizer(groups.simple_generators(), x, groups.full_group_order()))
    full = groups.full_group_chain()
    constant = injective = True
    for k in range(samples):
        g1 = full.random_element(rng)
        g2 = g1[A.random_element(rng)] if k % 2 == 0 else full.random_element(rng)
        same_id = groups.canonical_coset_rep(A, g1) == groups.canonical_coset_rep(A, g2)
        same_coset = A.contains(groups.inverse(g1)[g2])
        if same_coset:
            constant &= same_id
        else:
            injective &= not same_id
    return constant, injective


def _ade_graph_vs_lattice(rng):
    ok = 0
    for _ in range(ADE_MODELS):
        m = enriques.surface_from_roots(enriques.random_root_sublattice(rng))
        ok += enriques.graph_ade_type(sorted(m.deltabar)) == m.tau
    return ok


def test_criterion_7_property_suites():
    rng = np.random.default_rng(7)
    os_ok = _orbit_stabilizer_pairs(rng)
    ch_ok = _chamber_idempotence(rng)
    const, inj = _coset_ids(rng)
    ade_ok = _ade_graph_vs_lattice(rng)
    polar_bad = validation.polar_identity_failures()
    ok = (os_ok == ORBIT_STAB_PAIRS and ch_ok == CHAMBER_WORDS and const and inj
          and ade_ok == ADE_MODELS and polar_bad == 0)
    report(7, ok, f"orbit-stabilizer {os_ok}/{ORBIT_STAB_PAIRS}, chamber idempotence "
                  f"{ch_ok}/{CHAMBER_WORDS} (with Weyl vector recovery), CosetID constant={const} injective={inj}, "
                  f"ADE graph = lattice {ade_ok}/{ADE_MODELS}, polar identity failures {polar_bad}/1048576")


def test_criterion_8_isotropic_reconciliation():
    bad = []
    for name, m in enriques.presets().items():
        res = pol.polarization_orbits(m, pol.find_h(0))
        classes = enriques.fibration_classes(m)
        got = Counter((row.singularities, row.r) for row in res.ungrouped())
        want = Counter((c.signature, c.weight) for c in classes)
        if got != want or res.weighted_sum() != 527:
            bad.append(name)
    report(8, not bad, "h^2 = 0 double cosets match fibration classes (fibres and weights) for all presets"
                       + (f"; failed: {bad}" if bad else ""))
