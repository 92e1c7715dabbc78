"""Rational linear constraint systems with exact witness/certificate checks.

A `LinSystem` holds named, box-bounded variables and a list of linear
constraints over them.  A `FeasibilityResult` carries either an exact
witness or an infeasibility certificate: nonnegative multipliers over
constraints and variable bounds that combine to an unsatisfiable constant
inequality.  Both are re-verifiable by `verify_witness` /
`verify_certificate` with pure Fraction arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

LE, GE, EQ = "le", "ge", "eq"

#: certificate entry kinds
KIND_CONSTRAINT = "constraint"
KIND_LOWER = "lower"
KIND_UPPER = "upper"


@dataclass(frozen=True)
class Constraint:
    coeffs: dict[int, Fraction]
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in (LE, GE, EQ):
            raise ValueError(f"unknown relation {self.rel!r}")


@dataclass
class LinSystem:
    """Variables are identified by index; names/tags are for reporting."""

    names: list[str]
    tags: list[tuple]
    constraints: list[Constraint] = field(default_factory=list)
    bounds: list[tuple[Fraction, Fraction]] = field(default_factory=list)

    def __post_init__(self):
        if not self.bounds:
            self.bounds = [(Fraction(0), Fraction(1))] * len(self.names)
        if len(self.bounds) != len(self.names) or len(self.tags) != len(self.names):
            raise ValueError("names/tags/bounds length mismatch")
        for lo, hi in self.bounds:
            if not Fraction(0) <= lo <= hi <= Fraction(1):
                raise ValueError(f"bounds [{lo}, {hi}] outside [0, 1]")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def add(self, coeffs: dict[int, Fraction], rel: str, rhs: Fraction) -> None:
        clean = {j: Fraction(c) for j, c in coeffs.items() if c != 0}
        self.constraints.append(Constraint(clean, rel, Fraction(rhs)))


@dataclass
class FeasibilityResult:
    status: str  # "feasible" | "infeasible"
    witness: list[Fraction] | None = None
    certificate: list[tuple[str, int, Fraction]] | None = None
    objective_value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


def verify_witness(system: LinSystem, x: list[Fraction]) -> bool:
    """Exact check of every constraint and bound."""
    if len(x) != system.nvars:
        return False
    for j, (lo, hi) in enumerate(system.bounds):
        if not lo <= x[j] <= hi:
            return False
    for con in system.constraints:
        value = sum((c * x[j] for j, c in con.coeffs.items()), Fraction(0))
        if con.rel == LE and not value <= con.rhs:
            return False
        if con.rel == GE and not value >= con.rhs:
            return False
        if con.rel == EQ and value != con.rhs:
            return False
    return True


def _canonical_le_row(
    system: LinSystem, kind: str, index: int
) -> tuple[dict[int, Fraction], Fraction, bool]:
    """The referenced row in <=-form; third field: multiplier must be >= 0."""
    if kind == KIND_CONSTRAINT:
        con = system.constraints[index]
        if con.rel == GE:
            return {j: -c for j, c in con.coeffs.items()}, -con.rhs, True
        return dict(con.coeffs), con.rhs, con.rel == LE
    if kind == KIND_LOWER:
        lo, _ = system.bounds[index]
        return {index: Fraction(-1)}, -lo, True
    if kind == KIND_UPPER:
        _, hi = system.bounds[index]
        return {index: Fraction(1)}, hi, True
    raise ValueError(f"unknown certificate row kind {kind!r}")


def verify_certificate(
    system: LinSystem, certificate: list[tuple[str, int, Fraction]]
) -> bool:
    """Check that the multipliers combine the rows into 0 <= negative.

    Multipliers on inequality rows (and bounds) must be nonnegative;
    equality rows may carry either sign.
    """
    combined: dict[int, Fraction] = {}
    rhs = Fraction(0)
    for kind, index, mult in certificate:
        row, row_rhs, nonneg = _canonical_le_row(system, kind, index)
        if nonneg and mult < 0:
            return False
        for j, c in row.items():
            combined[j] = combined.get(j, Fraction(0)) + mult * c
        rhs += mult * row_rhs
    if any(c != 0 for c in combined.values()):
        return False
    return rhs < 0
