import itertools

import pytest

import omlbell as ob
from omlbell.errors import ConstructionError, DiagramError, SizeCapError
from omlbell.lattice import atoms_below, greedy_orthogonal_decomposition


def test_boolean_builder_shape():
    oml = ob.build_boolean(3)
    assert oml.size == 8
    assert len(oml.atoms) == 3
    assert oml.labels[oml.bottom] == "0"
    assert oml.labels[oml.top] == "1"
    assert ob.validate_oml(oml).valid
    # a single maximal Boolean block: the lattice itself
    assert oml.blocks == (frozenset(range(8)),)


def test_boolean_all_pairs_compatible():
    oml = ob.build_boolean(3)
    for a, b in itertools.product(oml.elements(), repeat=2):
        assert ob.is_compatible(oml, a, b)


def test_mo_builder(mo3):
    assert mo3.size == 8
    assert mo3.labels == ("0", "a1", "a1'", "a2", "a2'", "a3", "a3'", "1")
    assert ob.validate_oml(mo3).valid
    assert [sorted(b) for b in mo3.blocks] == [[0, 1, 2, 7], [0, 3, 4, 7], [0, 5, 6, 7]]


def test_mo_atoms_incompatible(mo3):
    a1, a2 = mo3.index_of("a1"), mo3.index_of("a2")
    assert not ob.is_compatible(mo3, a1, a2)
    assert not ob.is_orthogonal(mo3, a1, a2)
    # different-block atoms meet at the bottom and join at the top
    assert mo3.meet[a1][a2] == mo3.bottom
    assert mo3.join[a1][a2] == mo3.top


def test_orthogonality_within_block(mo3):
    a1, a1p = mo3.index_of("a1"), mo3.index_of("a1'")
    assert ob.is_orthogonal(mo3, a1, a1p)
    assert ob.is_compatible(mo3, a1, a1p)


def test_mo_sizes():
    for n in (1, 2, 3, 5):
        oml = ob.build_mo(n)
        assert oml.size == 2 * n + 2
        assert ob.validate_oml(oml).valid


def test_horizontal_sum_of_booleans():
    oml = ob.build_horizontal_sum([ob.build_boolean(2) for _ in range(3)])
    mo3 = ob.build_mo(3)
    assert oml.size == mo3.size == 8
    assert len(oml.atoms) == 6


def test_greechie_two_blocks_sharing_atom():
    oml = ob.build_from_greechie(ob.GreechieDiagram(5, ((0, 1, 2), (2, 3, 4))))
    assert oml.size == 12
    assert len(oml.atoms) == 5
    assert ob.validate_oml(oml).valid
    assert len(oml.blocks) == 2
    assert all(len(b) == 8 for b in oml.blocks)


def test_greechie_disjoint_blocks_is_horizontal_sum():
    oml = ob.build_from_greechie(ob.GreechieDiagram(4, ((0, 1), (2, 3))))
    assert oml.size == 6  # MO(2)
    assert ob.validate_oml(oml).valid


def test_greechie_diagram_rejects_bad_input():
    with pytest.raises(DiagramError):
        ob.GreechieDiagram(3, ((0, 1, 2), (1, 2))).check()  # two shared atoms
    with pytest.raises(DiagramError):
        ob.GreechieDiagram(2, ((0,),)).check()  # block too small
    with pytest.raises(DiagramError):
        ob.GreechieDiagram(2, ((0, 5),)).check()  # atom out of range
    with pytest.raises(DiagramError):
        ob.GreechieDiagram(3, ((0, 1),)).check()  # atom in no block


def test_validate_rejects_broken_ortho(mo3):
    ortho = list(mo3.ortho)
    ortho[1], ortho[2] = 1, 2  # fixed points cannot be complements
    broken = ob.Oml(
        labels=mo3.labels,
        leq=mo3.leq,
        ortho=tuple(ortho),
        meet=mo3.meet,
        join=mo3.join,
        bottom=mo3.bottom,
        top=mo3.top,
        atoms=mo3.atoms,
    )
    rep = ob.validate_oml(broken)
    assert not rep.valid
    assert any("ortho" in axiom for axiom, _ in rep.failures)


def test_non_lattice_order_rejected():
    # four-element "bowtie" without unique meet for the two middle elements
    labels = ["0", "x", "y", "1"]
    leq = [
        [True, True, True, True],
        [False, True, False, True],
        [False, False, True, True],
        [False, False, False, True],
    ]
    ortho = [3, 2, 1, 0]
    oml = ob.assemble_oml(labels, leq, ortho, validate=True)
    # this one *is* a lattice; now break orthocomplementation instead
    assert oml.size == 4
    with pytest.raises(ConstructionError):
        ob.assemble_oml(labels, leq, [3, 1, 2, 0], validate=True)


def test_size_cap():
    with pytest.raises(SizeCapError):
        ob.build_boolean(10)  # 1024 elements > cap


def test_orthogonal_atom_decomposition(mo3):
    top_decomps = ob.orthogonal_atom_decomposition(mo3, mo3.top)
    # each of the three blocks contributes its atom pair
    assert len(top_decomps) == 3
    a1 = mo3.index_of("a1")
    assert ob.orthogonal_atom_decomposition(mo3, a1) == [frozenset({a1})]
    assert ob.orthogonal_atom_decomposition(mo3, mo3.bottom) == [frozenset()]


def test_greedy_decomposition_matches(mo3):
    for a in mo3.elements():
        parts = greedy_orthogonal_decomposition(mo3, a)
        assert parts is not None
        assert frozenset(parts) in set(ob.orthogonal_atom_decomposition(mo3, a))


def test_atoms_below(mo3):
    assert atoms_below(mo3, mo3.top) == list(mo3.atoms)
    assert atoms_below(mo3, mo3.bottom) == []


def test_label_lookup(mo3):
    assert mo3.index_of("a2'") == 4
    with pytest.raises(KeyError):
        mo3.index_of("zz")


from hypothesis import given, settings, strategies as st


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=1, max_value=5))
def test_mo_valid_for_all_n(n):
    oml = ob.build_mo(n)
    assert ob.validate_oml(oml).valid
    for a in oml.elements():
        assert oml.meet[a][oml.ortho[a]] == oml.bottom


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=1, max_value=4))
def test_boolean_valid_for_all_n(n):
    oml = ob.build_boolean(n)
    assert oml.size == 2**n
    assert ob.validate_oml(oml).valid


def test_de_morgan_laws_hold(mo3):
    # lattice-level De Morgan: (a v b)' = a' ^ b'
    for a, b in itertools.product(mo3.elements(), repeat=2):
        assert mo3.ortho[mo3.join[a][b]] == mo3.meet[mo3.ortho[a]][mo3.ortho[b]]
