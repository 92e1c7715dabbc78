from fractions import Fraction

import pytest

import omlbell as ob


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE_LINES
    except ImportError:
        return
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def mo3():
    return ob.build_mo(3)


@pytest.fixture(scope="session")
def example1_smap():
    return ob.bundled.example1_smap()


def _sample_lattices():
    return [
        ("2^3", ob.build_boolean(3)),
        ("MO(2)", ob.build_mo(2)),
        ("MO(3)", ob.build_mo(3)),
        ("MO(5)", ob.build_mo(5)),
        (
            "pasting-12",
            ob.build_from_greechie(ob.GreechieDiagram(5, ((0, 1, 2), (2, 3, 4)))),
        ),
    ]


@pytest.fixture(scope="session")
def sample_lattices():
    return _sample_lattices()


_SAMPLING_SECONDS = {}


@pytest.fixture(scope="session")
def sampled_smaps(sample_lattices):
    """20 LP-sampled s-maps per lattice, 100 in total, deterministic seed."""
    import time

    t0 = time.monotonic()
    out = []
    for name, oml in sample_lattices:
        for p in ob.sample_smaps(oml, 20, seed=2024):
            out.append((name, oml, p))
    _SAMPLING_SECONDS["value"] = time.monotonic() - t0
    assert len(out) == 100
    return out


@pytest.fixture(scope="session")
def sampling_seconds(sampled_smaps):
    return _SAMPLING_SECONDS["value"]


@pytest.fixture(scope="session")
def uniform_boolean_smap():
    oml = ob.build_boolean(3)
    values = []
    for a in oml.elements():
        atoms_below = sum(1 for x in oml.atoms if oml.leq[x][a])
        values.append(Fraction(atoms_below, 3))
    m = ob.make_state(oml, values)
    return oml, m, ob.classical_smap_from_state(oml, m)
