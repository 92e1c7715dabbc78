"""Linear feasibility systems for s-maps and trivariate extensions.

Variables are joint-probability table entries (one per ordered element pair
or triple); the defining axioms become equality constraints, and the [0,1]
box completes the polytope.  Sampling draws vertices with seeded
small-integer objectives (see README for the seed algorithm).
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .lattice import Oml, is_orthogonal
from .linsystem import EQ, FeasibilityResult, LinSystem
from .maps import NMap, SMap, State, smap_validate
from .simplex import Infeasible, ReducedModel

ZERO = Fraction(0)
ONE = Fraction(1)


def _pair_index(oml: Oml, a: int, b: int) -> int:
    return a * oml.size + b


def _combine(*terms: tuple[int, Fraction]) -> dict[int, Fraction]:
    """Sum coefficients; indices may repeat (e.g. a v b == b when a = 0)."""
    out: dict[int, Fraction] = {}
    for j, c in terms:
        out[j] = out.get(j, ZERO) + c
    return out


def assemble_smap_system(
    oml: Oml,
    commutative: bool = False,
    fixed_values: dict[tuple[int, int], Fraction] | None = None,
    fixed_state: State | None = None,
) -> LinSystem:
    """One variable per ordered pair; axioms (s1)-(s3) as equalities."""
    n = oml.size
    names = [f"p({oml.labels[a]},{oml.labels[b]})" for a in range(n) for b in range(n)]
    tags = [(a, b) for a in range(n) for b in range(n)]
    system = LinSystem(names=names, tags=tags)
    idx = lambda a, b: _pair_index(oml, a, b)

    pins: dict[tuple[int, int], Fraction] = {}

    def pin(a: int, b: int, value: Fraction, origin: str) -> None:
        prior = pins.get((a, b))
        if prior is not None and prior != value:
            raise ValueError(
                f"pinned value for p({oml.labels[a]},{oml.labels[b]}) conflicts "
                f"({origin}): {value} vs {prior}"
            )
        pins[(a, b)] = value

    pin(oml.top, oml.top, ONE, "axiom s1")
    orth = [
        (a, b) for a in range(n) for b in range(n) if is_orthogonal(oml, a, b)
    ]
    for a, b in orth:
        pin(a, b, ZERO, "axiom s2")
    if fixed_values:
        for (a, b), v in fixed_values.items():
            if not ZERO <= v <= ONE:
                raise ValueError(f"pinned value {v} outside [0, 1]")
            pin(a, b, Fraction(v), "fixed value")
    if fixed_state is not None:
        for a in range(n):
            pin(a, a, fixed_state(a), "fixed state")

    for (a, b), v in pins.items():
        system.add({idx(a, b): ONE}, EQ, v)
    for a, b in orth:
        ab = oml.join[a][b]
        for c in range(n):
            system.add(
                _combine((idx(ab, c), ONE), (idx(a, c), -ONE), (idx(b, c), -ONE)),
                EQ,
                ZERO,
            )
            system.add(
                _combine((idx(c, ab), ONE), (idx(c, a), -ONE), (idx(c, b), -ONE)),
                EQ,
                ZERO,
            )
    if commutative:
        for a in range(n):
            for b in range(a + 1, n):
                system.add({idx(a, b): ONE, idx(b, a): -ONE}, EQ, ZERO)
    return system


def smap_from_witness(oml: Oml, witness: list[Fraction]) -> SMap:
    n = oml.size
    table = tuple(
        tuple(witness[_pair_index(oml, a, b)] for b in range(n)) for a in range(n)
    )
    rep = smap_validate(oml, table)
    if not rep.valid:
        raise AssertionError(f"solver witness is not an s-map: {rep.summary()}")
    return SMap(oml, table)


def _triple_index(oml: Oml, t: tuple[int, int, int]) -> int:
    n = oml.size
    return (t[0] * n + t[1]) * n + t[2]


def assemble_extension_system(oml: Oml, p: SMap) -> LinSystem:
    """Trivariate-extension polytope: axioms (s_31)-(s_33) plus the marginal
    pins p_3(x,y,1) = p_3(x,1,y) = p_3(1,x,y) = p(x,y).

    Non-commutative maps are not short-circuited; the marginal constraints
    themselves force commutativity, so infeasibility falls out of the solve.
    """
    n = oml.size
    triples = list(itertools.product(range(n), repeat=3))
    names = [
        f"p3({oml.labels[a]},{oml.labels[b]},{oml.labels[c]})" for a, b, c in triples
    ]
    system = LinSystem(names=names, tags=triples)
    idx = lambda t: _triple_index(oml, t)

    system.add({idx((oml.top,) * 3): ONE}, EQ, ONE)
    for t in triples:
        if any(
            is_orthogonal(oml, t[i], t[j])
            for i in range(3)
            for j in range(3)
            if i != j
        ):
            system.add({idx(t): ONE}, EQ, ZERO)
    orth = [
        (a, b)
        for a in range(n)
        for b in range(a + 1, n)
        if is_orthogonal(oml, a, b)
    ]
    for pos in range(3):
        for a, b in orth:
            ab = oml.join[a][b]
            for rest in itertools.product(range(n), repeat=2):
                t_ab = rest[:pos] + (ab,) + rest[pos:]
                t_a = rest[:pos] + (a,) + rest[pos:]
                t_b = rest[:pos] + (b,) + rest[pos:]
                system.add(
                    _combine((idx(t_ab), ONE), (idx(t_a), -ONE), (idx(t_b), -ONE)),
                    EQ,
                    ZERO,
                )
    top = oml.top
    for x in range(n):
        for y in range(n):
            v = p(x, y)
            system.add({idx((x, y, top)): ONE}, EQ, v)
            system.add({idx((x, top, y)): ONE}, EQ, v)
            system.add({idx((top, x, y)): ONE}, EQ, v)
    return system


def nmap_from_witness(oml: Oml, witness: list[Fraction]) -> NMap:
    table = {
        t: witness[_triple_index(oml, t)]
        for t in itertools.product(range(oml.size), repeat=3)
    }
    return NMap(oml, 3, table)


def sample_smaps(
    oml: Oml,
    count: int,
    seed: int,
    commutative: bool = False,
    fixed_values: dict[tuple[int, int], Fraction] | None = None,
    fixed_state: State | None = None,
) -> list[SMap]:
    """Vertices of the s-map polytope under seeded random objectives.

    Objective coefficients are integers drawn uniformly from [-9, 9] by
    `random.Random(seed)`, one per ordered pair in row-major order, a fresh
    vector per sample; each vertex is validated before being returned.
    Returns an empty list when the polytope is empty.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    system = assemble_smap_system(
        oml,
        commutative=commutative,
        fixed_values=fixed_values,
        fixed_state=fixed_state,
    )
    try:
        model = ReducedModel(system)
    except Infeasible:
        return []
    rng = random.Random(seed)
    maps: list[SMap] = []
    for _ in range(count):
        objective = {
            j: Fraction(rng.randint(-9, 9)) for j in range(system.nvars)
        }
        result = model.optimize(objective, "max")
        if not result.feasible:
            return []
        maps.append(smap_from_witness(oml, result.witness))
    return maps
