"""End-to-end acceptance checks; each test prints one PASS/FAIL line."""

import itertools
import random
import time
from fractions import Fraction as F

import omlbell as ob
from omlbell.linsystem import EQ, GE, LE


ACCEPTANCE_LINES: list[str] = []


def _line(n: int, ok: bool, desc: str) -> None:
    text = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {desc}"
    ACCEPTANCE_LINES.append(text)
    print(text)


def _ids(oml, *labels):
    return tuple(oml.index_of(x) for x in labels)


def test_criterion_1_example1_end_to_end():
    t0 = time.monotonic()
    oml = ob.build_horizontal_sum([ob.build_boolean(2) for _ in range(3)])
    assert oml.size == 8
    p = ob.bundled.example1_smap()
    assert ob.smap_validate(p.lattice, p.values).valid
    rep = ob.eval_smap_inequality(
        p.lattice, p, "B2p", _ids(p.lattice, "a1", "a2", "a3")
    )
    elapsed = time.monotonic() - t0
    ok = rep.lhs == F(6, 5) and not rep.satisfied and elapsed < 1.0
    _line(1, ok, f"B2p LHS = {rep.lhs} violated, {elapsed:.2f}s")
    assert ok


def test_criterion_2_b1p_never_violated(sampled_smaps, sampling_seconds):
    t0 = time.monotonic()
    total_violations = 0
    for name, oml, p in sampled_smaps:
        result = ob.scan(oml, p, "B1p", order_variants=True)
        total_violations += result.violation_count
        q = ob.jmap_from_smap(p)
        for a, b in itertools.product(oml.elements(), repeat=2):
            assert 0 <= q(a, b) <= 1, (name, a, b)
    elapsed = sampling_seconds + (time.monotonic() - t0)
    ok = total_violations == 0 and len(sampled_smaps) == 100 and elapsed < 30.0
    _line(
        2,
        ok,
        f"100 sampled maps, {total_violations} B1p violations, "
        f"{elapsed:.1f}s incl. sampling",
    )
    assert ok


def test_criterion_3_identity_suites(sampled_smaps, example1_smap):
    failures = 0
    maps = [(oml, p) for _, oml, p in sampled_smaps]
    maps.append((example1_smap.lattice, example1_smap))
    for oml, p in maps:
        m = ob.state_from_smap(p)
        # generated state: diagonal equals both margins, and is a state
        if not ob.validate_state(oml, m.values).valid:
            failures += 1
        top = oml.top
        for a in oml.elements():
            if not (p(a, a) == p(a, top) == p(top, a)):
                failures += 1
        # compatible pairs go through the meet, symmetrically
        for a, b in itertools.product(oml.elements(), repeat=2):
            if ob.is_compatible(oml, a, b) and ob.is_compatible(oml, b, a):
                if p(a, b) != m(oml.meet[a][b]) or p(a, b) != p(b, a):
                    failures += 1
            ao, bo = oml.ortho[a], oml.ortho[b]
            if p(ao, bo) != 1 - m(a) - m(b) + p(a, b):
                failures += 1
        # difference map: construction cross-checks the closed form itself
        d = ob.dmap_from_smap(p)
        for a in oml.elements():
            if d(a, oml.bottom) != m(a):
                failures += 1
        if not ob.de_morgan_audit(p).valid:
            failures += 1
    ok = failures == 0
    _line(3, ok, f"identity suites on {len(maps)} maps, {failures} failures")
    assert ok


def test_criterion_4_triangle_equivalences(sampled_smaps, example1_smap):
    mismatches = 0
    maps = [(oml, p) for _, oml, p in sampled_smaps]
    maps.append((example1_smap.lattice, example1_smap))
    for oml, p in maps:
        rep = ob.equivalence_audit(oml, p)
        mismatches += sum(
            1 for axiom, _ in rep.failures if not axiom.startswith("prop2")
        )
    ok = mismatches == 0
    _line(4, ok, f"triangle-form equivalences on {len(maps)} maps, {mismatches} mismatches")
    assert ok


def test_criterion_5_commutative_implication(sampled_smaps):
    checked = 0
    violations = 0
    for _, oml, p in sampled_smaps:
        if not p.is_commutative:
            continue
        if ob.scan(oml, p, "B2p").violation_count:
            continue
        checked += 1
        violations += ob.scan(oml, p, "C1p").violation_count
        violations += ob.scan(oml, p, "C2p").violation_count
    ok = checked > 0 and violations == 0
    _line(5, ok, f"{checked} commutative B2p-clean maps, {violations} C1p/C2p violations")
    assert ok


def test_criterion_6_extension_feasibility(example1_smap, uniform_boolean_smap):
    system = ob.assemble_extension_system(example1_smap.lattice, example1_smap)
    result = ob.solve(system)
    infeasible_ok = not result.feasible and ob.verify_certificate(
        system, result.certificate
    )

    oml, m, p = uniform_boolean_smap
    ext = ob.assemble_extension_system(oml, p)
    n = oml.size
    witness = [F(0)] * n**3
    for x, y, z in itertools.product(oml.elements(), repeat=3):
        witness[(x * n + y) * n + z] = m(oml.meet[oml.meet[x][y]][z])
    feasible_ok = ob.verify_witness(ext, witness) and ob.solve(ext).feasible
    ok = infeasible_ok and feasible_ok
    _line(6, ok, "bundled map non-extendable (verified certificate); classical map extendable")
    assert ok


def test_criterion_7_max_violation(mo3):
    system = ob.assemble_smap_system(mo3, commutative=True)
    n = mo3.size
    ids = _ids(mo3, "a1", "a2", "a3")
    objective = {}
    for x in ids:
        objective[x * n + x] = objective.get(x * n + x, F(0)) + 1
    for i in range(3):
        for j in range(i + 1, 3):
            k = ids[i] * n + ids[j]
            objective[k] = objective.get(k, F(0)) - 1
    result = ob.optimize(system, objective, "max")
    ok = result.feasible and result.objective_value == F(3, 2)
    _line(7, ok, f"max commutative B2p LHS = {result.objective_value}")
    assert ok


def test_criterion_8_meet_version_contrast():
    oml = ob.build_mo(2)
    m = ob.make_state(oml, [F(0), F(4, 5), F(1, 5), F(4, 5), F(1, 5), F(1)])
    rep = ob.eval_state_inequality(oml, m, "B1", _ids(oml, "a1", "a2"))
    state_violated = rep.lhs == F(8, 5) and not rep.satisfied
    clean = all(
        ob.scan(oml, p, "B1p", order_variants=True).violation_count == 0
        for p in ob.sample_smaps(oml, 20, seed=77)
    )
    ok = state_violated and clean
    _line(8, ok, "B1 violated by a state (8/5 > 1) while B1p holds for all sampled s-maps")
    assert ok


def test_criterion_9_solver_oracle_agreement():
    rng = random.Random(20240823)
    disagreements = 0
    for _ in range(200):
        nvars = rng.randint(1, 6)
        system = ob.LinSystem(
            names=[f"x{j}" for j in range(nvars)], tags=list(range(nvars))
        )
        for _ in range(rng.randint(0, 12)):
            coeffs = {
                j: F(rng.randint(-3, 3))
                for j in range(nvars)
                if rng.random() < 0.7
            }
            system.add(
                coeffs,
                rng.choice([LE, GE, EQ]),
                F(rng.randint(-4, 4), rng.randint(1, 3)),
            )
        result = ob.solve(system)
        if result.feasible != ob.fm_feasible(system):
            disagreements += 1
            continue
        if result.feasible:
            assert ob.verify_witness(system, result.witness)
        else:
            assert ob.verify_certificate(system, result.certificate)
    ok = disagreements == 0
    _line(9, ok, f"200 random systems, {disagreements} solver/oracle disagreements")
    assert ok
