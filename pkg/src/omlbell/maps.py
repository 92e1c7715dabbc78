"""States, bivariate s/j/d-maps, n-variate maps and counterfactual connectives.

All values are exact `Fraction`s.  Validators check the defining axioms
exhaustively and report every failure with an element witness; the derived
constructions (state from an s-map, induced j-map and d-map) follow the
closed forms and cross-check them where a second route exists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import ConsistencyError, FormulaError
from .lattice import Oml, is_compatible, is_orthogonal
from .report import ValidationReport

ZERO = Fraction(0)
ONE = Fraction(1)


def _orthogonal_pairs(oml: Oml) -> list[tuple[int, int]]:
    return [
        (a, b)
        for a in oml.elements()
        for b in oml.elements()
        if is_orthogonal(oml, a, b)
    ]


# ---------------------------------------------------------------------------
# states


@dataclass(frozen=True)
class State:
    """Probability measure: 1 at the top, additive over orthogonal joins."""

    lattice: Oml
    values: tuple[Fraction, ...]

    def __call__(self, a: int) -> Fraction:
        return self.values[a]


def validate_state(oml: Oml, values: Iterable[Fraction]) -> ValidationReport:
    rep = ValidationReport()
    vals = tuple(Fraction(v) for v in values)
    if len(vals) != oml.size:
        rep.add("state-coverage", (len(vals), oml.size))
        return rep
    for a in oml.elements():
        if not ZERO <= vals[a] <= ONE:
            rep.add("state-range", (a, vals[a]))
    if vals[oml.top] != ONE:
        rep.add("state-top", (oml.top, vals[oml.top]))
    for a, b in _orthogonal_pairs(oml):
        if vals[oml.join[a][b]] != vals[a] + vals[b]:
            rep.add("state-additive", (a, b))
    return rep


def make_state(oml: Oml, values: Iterable[Fraction]) -> State:
    vals = tuple(Fraction(v) for v in values)
    rep = validate_state(oml, vals)
    if not rep.valid:
        raise ValueError(f"not a state: {rep.summary()}")
    return State(oml, vals)


# ---------------------------------------------------------------------------
# bivariate maps


@dataclass(frozen=True)
class SMap:
    """Joint-probability map for simultaneous measurements, axioms (s1)-(s3)."""

    lattice: Oml
    values: tuple[tuple[Fraction, ...], ...]

    def __call__(self, a: int, b: int) -> Fraction:
        return self.values[a][b]

    @property
    def is_commutative(self) -> bool:
        n = self.lattice.size
        return all(
            self.values[a][b] == self.values[b][a]
            for a in range(n)
            for b in range(a + 1, n)
        )


@dataclass(frozen=True)
class JMap:
    """Join map, axioms (j1)-(j3); models disjunction probability."""

    lattice: Oml
    values: tuple[tuple[Fraction, ...], ...]

    def __call__(self, a: int, b: int) -> Fraction:
        return self.values[a][b]


@dataclass(frozen=True)
class DMap:
    """Difference map, axioms (d1)-(d3); models symmetric-difference probability."""

    lattice: Oml
    values: tuple[tuple[Fraction, ...], ...]

    def __call__(self, a: int, b: int) -> Fraction:
        return self.values[a][b]


def _as_table(oml: Oml, table) -> tuple[tuple[Fraction, ...], ...]:
    out = tuple(tuple(Fraction(v) for v in row) for row in table)
    if len(out) != oml.size or any(len(row) != oml.size for row in out):
        raise ValueError("table must cover all ordered element pairs")
    return out


def smap_validate(oml: Oml, table) -> ValidationReport:
    rep = ValidationReport()
    p = _as_table(oml, table)
    n = oml.size
    for a in range(n):
        for b in range(n):
            if not ZERO <= p[a][b] <= ONE:
                rep.add("s-range", (a, b, p[a][b]))
    if p[oml.top][oml.top] != ONE:
        rep.add("s1", (oml.top, oml.top))
    orth = _orthogonal_pairs(oml)
    for a, b in orth:
        if p[a][b] != ZERO:
            rep.add("s2", (a, b))
    for a, b in orth:
        ab = oml.join[a][b]
        for c in range(n):
            if p[ab][c] != p[a][c] + p[b][c]:
                rep.add("s3-left", (a, b, c))
            if p[c][ab] != p[c][a] + p[c][b]:
                rep.add("s3-right", (a, b, c))
    return rep


def make_smap(oml: Oml, table) -> SMap:
    p = _as_table(oml, table)
    rep = smap_validate(oml, p)
    if not rep.valid:
        raise ValueError(f"not an s-map: {rep.summary()}")
    return SMap(oml, p)


def state_from_smap(p: SMap) -> State:
    """The state generated by p: m_p(a) = p(a, a)."""
    return State(p.lattice, tuple(p(a, a) for a in p.lattice.elements()))


def jmap_from_smap(p: SMap) -> JMap:
    """q_p(a, b) = p(a, a) + p(b, b) - p(a, b)."""
    n = p.lattice.size
    vals = tuple(
        tuple(p(a, a) + p(b, b) - p(a, b) for b in range(n)) for a in range(n)
    )
    return JMap(p.lattice, vals)


def dmap_from_smap(p: SMap) -> DMap:
    """d_p(a, b) = p(a, b') + p(a', b), cross-checked against the closed form
    p(a, a) + p(b, b) - 2 p(a, b) on every pair."""
    oml = p.lattice
    n = oml.size
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            direct = p(a, oml.ortho[b]) + p(oml.ortho[a], b)
            closed = p(a, a) + p(b, b) - 2 * p(a, b)
            if direct != closed:
                raise ConsistencyError(
                    f"d-map closed form mismatch at ({a}, {b}): "
                    f"{direct} != {closed}"
                )
            row.append(direct)
        rows.append(tuple(row))
    return DMap(oml, tuple(rows))


def jmap_validate(oml: Oml, table) -> ValidationReport:
    rep = ValidationReport()
    q = _as_table(oml, table)
    n = oml.size
    for a in range(n):
        for b in range(n):
            if not ZERO <= q[a][b] <= ONE:
                rep.add("j-range", (a, b, q[a][b]))
    if q[oml.bottom][oml.bottom] != ZERO:
        rep.add("j1-bottom", (oml.bottom, oml.bottom))
    if q[oml.top][oml.top] != ONE:
        rep.add("j1-top", (oml.top, oml.top))
    orth = _orthogonal_pairs(oml)
    for a, b in orth:
        if q[a][b] != q[a][a] + q[b][b]:
            rep.add("j2", (a, b))
    for a, b in orth:
        ab = oml.join[a][b]
        for c in range(n):
            if q[ab][c] != q[a][c] + q[b][c] - q[c][c]:
                rep.add("j3-left", (a, b, c))
            if q[c][ab] != q[c][a] + q[c][b] - q[c][c]:
                rep.add("j3-right", (a, b, c))
    return rep


def dmap_validate(oml: Oml, table) -> ValidationReport:
    rep = ValidationReport()
    d = _as_table(oml, table)
    n = oml.size
    bot, top = oml.bottom, oml.top
    for a in range(n):
        for b in range(n):
            if not ZERO <= d[a][b] <= ONE:
                rep.add("d-range", (a, b, d[a][b]))
    for a in range(n):
        if d[a][a] != ZERO:
            rep.add("d1-diagonal", (a,))
    if d[top][bot] != ONE or d[bot][top] != ONE:
        rep.add("d1-extremes", (top, bot))
    orth = _orthogonal_pairs(oml)
    for a, b in orth:
        if d[a][b] != d[a][bot] + d[bot][b]:
            rep.add("d2", (a, b))
    for a, b in orth:
        ab = oml.join[a][b]
        for c in range(n):
            if d[ab][c] != d[a][c] + d[b][c] - d[bot][c]:
                rep.add("d3-left", (a, b, c))
            if d[c][ab] != d[c][a] + d[c][b] - d[c][bot]:
                rep.add("d3-right", (a, b, c))
    return rep


def classical_smap_from_state(oml: Oml, m: State) -> SMap:
    """On a Boolean lattice: p(a, b) = m(a /\\ b)."""
    for a in oml.elements():
        for b in oml.elements():
            if not is_compatible(oml, a, b):
                raise ValueError(
                    f"elements {a} and {b} are not compatible; "
                    "classical construction needs a Boolean lattice"
                )
    vals = tuple(
        tuple(m(oml.meet[a][b]) for b in oml.elements()) for a in oml.elements()
    )
    return SMap(oml, vals)


# ---------------------------------------------------------------------------
# n-variate maps


@dataclass(frozen=True)
class NMap:
    """n-variate joint map, axioms (s_n1)-(s_n3); arity >= 2."""

    lattice: Oml
    arity: int
    values: Mapping[tuple[int, ...], Fraction]

    def __call__(self, *args: int) -> Fraction:
        return self.values[args]


def nmap_validate(oml: Oml, table: Mapping[tuple[int, ...], Fraction], arity: int) -> ValidationReport:
    rep = ValidationReport()
    if arity < 2:
        rep.add("n-arity", (arity,))
        return rep
    n = oml.size
    tuples = list(itertools.product(range(n), repeat=arity))
    missing = [t for t in tuples if t not in table]
    if missing:
        rep.add("n-coverage", missing[0])
        return rep
    for t in tuples:
        v = table[t]
        if not ZERO <= v <= ONE:
            rep.add("n-range", t + (v,))
    top_tuple = (oml.top,) * arity
    if table[top_tuple] != ONE:
        rep.add("sn1", top_tuple)
    for t in tuples:
        if any(
            is_orthogonal(oml, t[i], t[j])
            for i in range(arity)
            for j in range(arity)
            if i != j
        ):
            if table[t] != ZERO:
                rep.add("sn2", t)
    orth = [(a, b) for a in range(n) for b in range(a + 1, n) if is_orthogonal(oml, a, b)]
    for pos in range(arity):
        for a, b in orth:
            ab = oml.join[a][b]
            for rest in itertools.product(range(n), repeat=arity - 1):
                t_ab = rest[:pos] + (ab,) + rest[pos:]
                t_a = rest[:pos] + (a,) + rest[pos:]
                t_b = rest[:pos] + (b,) + rest[pos:]
                if table[t_ab] != table[t_a] + table[t_b]:
                    rep.add("sn3", (pos, a, b) + rest)
    return rep


def make_nmap(oml: Oml, table: Mapping[tuple[int, ...], Fraction], arity: int) -> NMap:
    tbl = {tuple(k): Fraction(v) for k, v in table.items()}
    rep = nmap_validate(oml, tbl, arity)
    if not rep.valid:
        raise ValueError(f"not an s_{arity}-map: {rep.summary()}")
    return NMap(oml, arity, tbl)


def marginal_map(p_n: NMap, keep: list[int]) -> NMap:
    """Fix all dropped coordinates to the top element."""
    if not keep:
        raise ValueError("keep must be nonempty")
    if len(set(keep)) != len(keep):
        raise ValueError("keep positions must be distinct")
    if any(not 0 <= k < p_n.arity for k in keep):
        raise ValueError("keep positions out of range")
    if len(keep) >= p_n.arity:
        raise ValueError("keep must drop at least one coordinate")
    oml = p_n.lattice
    k = len(keep)
    table = {}
    for t in itertools.product(range(oml.size), repeat=k):
        full = [oml.top] * p_n.arity
        for pos, v in zip(keep, t):
            full[pos] = v
        table[t] = p_n.values[tuple(full)]
    return NMap(oml, k, table)


def nmap_from_smap(p: SMap) -> NMap:
    table = {
        (a, b): p(a, b)
        for a in p.lattice.elements()
        for b in p.lattice.elements()
    }
    return NMap(p.lattice, 2, table)


def smap_from_nmap(p2: NMap) -> SMap:
    if p2.arity != 2:
        raise ValueError("arity-2 map required")
    n = p2.lattice.size
    vals = tuple(tuple(p2.values[(a, b)] for b in range(n)) for a in range(n))
    return SMap(p2.lattice, vals)


# ---------------------------------------------------------------------------
# counterfactual connectives


@dataclass(frozen=True)
class Lit:
    element: int


@dataclass(frozen=True)
class NegLit:
    element: int


@dataclass(frozen=True)
class Conj:
    left: Union[Lit, NegLit]
    right: Union[Lit, NegLit]


@dataclass(frozen=True)
class Disj:
    left: Union[Lit, NegLit]
    right: Union[Lit, NegLit]


@dataclass(frozen=True)
class Neg:
    inner: Union[Conj, Disj]


CounterfactualFormula = Union[Lit, NegLit, Conj, Disj, Neg]


def _resolve(oml: Oml, lit: Union[Lit, NegLit]) -> int:
    if isinstance(lit, Lit):
        return lit.element
    if isinstance(lit, NegLit):
        return oml.ortho[lit.element]
    raise FormulaError(
        f"connective argument must be a literal, got {type(lit).__name__}"
    )


def counterfactual_eval(p: SMap, formula: CounterfactualFormula) -> Fraction:
    """Truth value of a two-literal counterfactual formula under p.

    Conjunction evaluates through p, disjunction through the induced j-map;
    deeper nesting is rejected (it would need higher-arity maps).
    """
    oml = p.lattice
    if isinstance(formula, Lit):
        return p(formula.element, formula.element)
    if isinstance(formula, NegLit):
        return ONE - p(formula.element, formula.element)
    if isinstance(formula, Conj):
        x = _resolve(oml, formula.left)
        y = _resolve(oml, formula.right)
        return p(x, y)
    if isinstance(formula, Disj):
        x = _resolve(oml, formula.left)
        y = _resolve(oml, formula.right)
        return p(x, x) + p(y, y) - p(x, y)
    if isinstance(formula, Neg):
        if not isinstance(formula.inner, (Conj, Disj)):
            raise FormulaError("negation applies to a conjunction or disjunction")
        return ONE - counterfactual_eval(p, formula.inner)
    raise FormulaError(f"unsupported formula {formula!r}")


def de_morgan_audit(p: SMap) -> ValidationReport:
    """Check p(a', b') = 1 - q_p(a, b) and q_p(a', b') = 1 - p(a, b) everywhere."""
    rep = ValidationReport()
    oml = p.lattice
    q = jmap_from_smap(p)
    for a in oml.elements():
        for b in oml.elements():
            ao, bo = oml.ortho[a], oml.ortho[b]
            if p(ao, bo) != ONE - q(a, b):
                rep.add("de-morgan-conj", (a, b))
            if q(ao, bo) != ONE - p(a, b):
                rep.add("de-morgan-disj", (a, b))
    return rep
