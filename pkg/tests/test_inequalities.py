import itertools
from fractions import Fraction as F

import pytest

import omlbell as ob


def _ids(oml, *labels):
    return tuple(oml.index_of(x) for x in labels)


def test_b2p_violation_example1(mo3, example1_smap):
    rep = ob.eval_smap_inequality(
        mo3, example1_smap, "B2p", _ids(mo3, "a1", "a2", "a3")
    )
    assert rep.lhs == F(6, 5)
    assert rep.rhs == 1
    assert rep.slack == F(-1, 5)
    assert not rep.satisfied


def test_b1p_never_violated_example1(mo3, example1_smap):
    result = ob.scan(mo3, example1_smap, "B1p", order_variants=True)
    assert result.tuples_checked == 64
    assert result.evaluations == 128
    assert result.violation_count == 0


def test_jmap_range_equivalent_to_b1p(mo3, example1_smap):
    # B1p(a, b) <= 1 is exactly q_p(a, b) in [0, 1] (lower bound from s3)
    q = ob.jmap_from_smap(example1_smap)
    for a, b in itertools.product(mo3.elements(), repeat=2):
        assert 0 <= q(a, b) <= 1


def test_b2p_scan_counts(mo3, example1_smap):
    result = ob.scan(mo3, example1_smap, "B2p")
    assert result.tuples_checked == 512
    assert result.violation_count == 12
    args = {tuple(mo3.labels[i] for i in rep.args) for rep in result.violations}
    # all six orders of the unprimed atoms and of the primed atoms
    assert ("a1", "a2", "a3") in args
    assert ("a1'", "a2'", "a3'") in args
    assert len(args) == 12


def test_b2p_order_variants(mo3, example1_smap):
    # the map is commutative, so every variant agrees
    base = ob.eval_smap_inequality(
        mo3, example1_smap, "B2p", _ids(mo3, "a1", "a2", "a3")
    )
    for variant in range(8):
        rep = ob.eval_smap_inequality(
            mo3, example1_smap, "B2p", _ids(mo3, "a1", "a2", "a3"), variant
        )
        assert rep.lhs == base.lhs
    with pytest.raises(ValueError):
        ob.eval_smap_inequality(
            mo3, example1_smap, "B2p", _ids(mo3, "a1", "a2", "a3"), 8
        )


def test_triangle_violation_example1(mo3, example1_smap):
    # d(a1, a3) > d(a1, a2') + d(a2', a3), i.e. TRI fails at (a1, a2, a3)
    rep = ob.eval_smap_inequality(
        mo3, example1_smap, "TRI", _ids(mo3, "a1", "a2", "a3")
    )
    assert rep.lhs == F(4, 5)
    assert rep.rhs == F(2, 5)
    assert not rep.satisfied


def test_state_b1_violated_on_mo2():
    oml = ob.build_mo(2)
    values = [F(0), F(4, 5), F(1, 5), F(4, 5), F(1, 5), F(1)]
    m = ob.make_state(oml, values)
    rep = ob.eval_state_inequality(oml, m, "B1", _ids(oml, "a1", "a2"))
    assert rep.lhs == F(8, 5)
    assert not rep.satisfied


def test_state_b2_on_boolean_uniform(uniform_boolean_smap):
    oml, m, _ = uniform_boolean_smap
    result = ob.scan(oml, m, "B2")
    assert result.violation_count == 0


def test_state_c1_c2_arities(mo3, example1_smap):
    m = ob.state_from_smap(example1_smap)
    with pytest.raises(ValueError):
        ob.eval_state_inequality(mo3, m, "C1", _ids(mo3, "a1", "a2"))
    rep = ob.eval_state_inequality(
        mo3, m, "C1", _ids(mo3, "a1", "a2", "a3", "a1'")
    )
    assert rep.satisfied == (rep.slack >= 0)


def test_unknown_inequality(mo3, example1_smap):
    with pytest.raises(ValueError):
        ob.eval_smap_inequality(mo3, example1_smap, "B9", (1, 2))
    with pytest.raises(ValueError):
        ob.eval_state_inequality(
            mo3, ob.state_from_smap(example1_smap), "B1p", (1, 2)
        )


def test_scan_requires_matching_measure(mo3, example1_smap):
    with pytest.raises(ValueError):
        ob.scan(mo3, example1_smap, "B1")
    with pytest.raises(ValueError):
        ob.scan(mo3, ob.state_from_smap(example1_smap), "B1p")


def test_equivalence_audit_example1(mo3, example1_smap):
    assert ob.equivalence_audit(mo3, example1_smap).valid


def test_scan_variant_counts(mo3, example1_smap):
    result = ob.scan(mo3, example1_smap, "C1p", order_variants=True)
    assert result.evaluations == result.tuples_checked * 16
