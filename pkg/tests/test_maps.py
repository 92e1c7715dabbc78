import itertools
from fractions import Fraction as F

import pytest

import omlbell as ob
from omlbell.maps import Conj, Disj, Lit, Neg, NegLit
from omlbell.errors import FormulaError


def test_example1_smap_valid(mo3, example1_smap):
    assert ob.smap_validate(mo3, example1_smap.values).valid
    assert example1_smap.is_commutative


def test_example1_values(mo3, example1_smap):
    p = example1_smap
    a1, a2 = mo3.index_of("a1"), mo3.index_of("a2")
    a1p, a2p = mo3.index_of("a1'"), mo3.index_of("a2'")
    assert p(a1, a1) == F(1, 2)
    assert p(a1, a2) == F(1, 10)
    assert p(a1, a2p) == F(2, 5)
    assert p(a1p, a2p) == F(1, 10)
    assert p(a1, a1p) == 0  # orthogonal


def test_state_from_smap_is_state(mo3, example1_smap):
    m = ob.state_from_smap(example1_smap)
    assert ob.validate_state(mo3, m.values).valid
    # the generated state agrees with both margins
    for a in mo3.elements():
        assert m(a) == example1_smap(a, mo3.top) == example1_smap(mo3.top, a)


def test_jmap_values(mo3, example1_smap):
    q = ob.jmap_from_smap(example1_smap)
    a1, a2 = mo3.index_of("a1"), mo3.index_of("a2")
    assert q(a1, a2) == F(9, 10)
    from omlbell.maps import jmap_validate

    assert jmap_validate(mo3, q.values).valid


def test_dmap_values_and_closed_form(mo3, example1_smap):
    d = ob.dmap_from_smap(example1_smap)
    a1, a2 = mo3.index_of("a1"), mo3.index_of("a2")
    assert d(a1, a2) == F(4, 5)
    # d(a, 0) recovers the generated state
    m = ob.state_from_smap(example1_smap)
    for a in mo3.elements():
        assert d(a, mo3.bottom) == m(a)
    from omlbell.maps import dmap_validate

    assert dmap_validate(mo3, d.values).valid


def test_compatible_pairs_meet_identity(mo3, example1_smap):
    p = example1_smap
    m = ob.state_from_smap(p)
    for a, b in itertools.product(mo3.elements(), repeat=2):
        if ob.is_compatible(mo3, a, b) and ob.is_compatible(mo3, b, a):
            assert p(a, b) == m(mo3.meet[a][b])
            assert p(a, b) == p(b, a)


def test_primed_identity(mo3, example1_smap):
    p = example1_smap
    for a, b in itertools.product(mo3.elements(), repeat=2):
        ao, bo = mo3.ortho[a], mo3.ortho[b]
        assert p(ao, bo) == 1 - p(a, a) - p(b, b) + p(a, b)


def test_make_state_rejects_bad_values(mo3):
    with pytest.raises(ValueError):
        ob.make_state(mo3, [F(0)] * 8)  # top must get 1


def test_make_smap_rejects_bad_table(mo3, example1_smap):
    table = [list(row) for row in example1_smap.values]
    table[1][3] = F(1, 3)  # breaks additivity
    with pytest.raises(ValueError):
        ob.make_smap(mo3, table)


def test_classical_smap_on_boolean():
    oml = ob.build_boolean(2)
    m = ob.make_state(oml, [F(0), F(1, 4), F(3, 4), F(1)])
    p = ob.classical_smap_from_state(oml, m)
    assert ob.smap_validate(oml, p.values).valid
    assert p.is_commutative
    for a, b in itertools.product(oml.elements(), repeat=2):
        assert p(a, b) == m(oml.meet[a][b])


def test_classical_smap_needs_compatibility(mo3):
    m = ob.state_from_smap(ob.bundled.example1_smap())
    with pytest.raises(ValueError):
        ob.classical_smap_from_state(mo3, m)


def test_nmap_roundtrip(mo3, example1_smap):
    p2 = ob.nmap_from_smap(example1_smap)
    from omlbell.maps import nmap_validate

    assert nmap_validate(mo3, p2.values, 2).valid
    back = ob.smap_from_nmap(p2)
    assert back.values == example1_smap.values


def test_marginal_of_bivariate(mo3, example1_smap):
    p2 = ob.nmap_from_smap(example1_smap)
    m1 = ob.marginal_map(p2, [0])
    for a in mo3.elements():
        assert m1.values[(a,)] == example1_smap(a, mo3.top)
    with pytest.raises(ValueError):
        ob.marginal_map(p2, [0, 1])  # must drop a coordinate
    with pytest.raises(ValueError):
        ob.marginal_map(p2, [])


def test_counterfactual_connectives(mo3, example1_smap):
    p = example1_smap
    a1, a2 = mo3.index_of("a1"), mo3.index_of("a2")
    q = ob.jmap_from_smap(p)
    assert ob.counterfactual_eval(p, Conj(Lit(a1), Lit(a2))) == p(a1, a2)
    assert ob.counterfactual_eval(p, Disj(Lit(a1), Lit(a2))) == q(a1, a2)
    # negated literals route through the orthocomplement
    assert ob.counterfactual_eval(p, Conj(NegLit(a1), Lit(a2))) == p(
        mo3.ortho[a1], a2
    )
    assert ob.counterfactual_eval(p, Lit(a1)) == p(a1, a1)
    assert ob.counterfactual_eval(p, NegLit(a1)) == 1 - p(a1, a1)
    assert (
        ob.counterfactual_eval(p, Neg(Conj(Lit(a1), Lit(a2))))
        == 1 - p(a1, a2)
    )


def test_counterfactual_rejects_deep_nesting(mo3, example1_smap):
    a1 = mo3.index_of("a1")
    with pytest.raises(FormulaError):
        ob.counterfactual_eval(
            example1_smap, Conj(Conj(Lit(a1), Lit(a1)), Lit(a1))
        )
    with pytest.raises(FormulaError):
        ob.counterfactual_eval(example1_smap, Neg(Lit(a1)))


def test_de_morgan_audit_example1(example1_smap):
    assert ob.de_morgan_audit(example1_smap).valid
