"""Bell-type inequality evaluation, scanning and equivalence audits.

Meet-based forms (B1, B2, C1, C2) take a state; the primed forms and the
triangle forms (TRI, TRIp, TRIpp) take an s-map.  Slack is always oriented
so that satisfied <=> slack >= 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .lattice import Oml
from .maps import DMap, SMap, State, dmap_from_smap
from .report import ValidationReport

ONE = Fraction(1)
TWO = Fraction(2)

STATE_IDS = ("B1", "B2", "C1", "C2")
SMAP_IDS = ("B1p", "B2p", "C1p", "C2p", "TRI", "TRIp", "TRIpp")

ARITY = {
    "B1": 2, "B2": 3, "C1": 4, "C2": 4,
    "B1p": 2, "B2p": 3, "C1p": 4, "C2p": 4,
    "TRI": 3, "TRIp": 4, "TRIpp": 4,
}

#: number of argument-order counterparts per inequality (one per joint term)
JOINT_TERMS = {"B1p": 1, "B2p": 3, "C1p": 4, "C2p": 4}


@dataclass(frozen=True)
class InequalityReport:
    id: str
    args: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction
    slack: Fraction
    satisfied: bool
    variant: int = 0


def _report(ineq_id: str, args, lhs, rhs, kind: str, variant: int = 0) -> InequalityReport:
    slack = rhs - lhs if kind == "le" else lhs - rhs
    return InequalityReport(ineq_id, tuple(args), lhs, rhs, slack, slack >= 0, variant)


def eval_state_inequality(
    oml: Oml, m: State, ineq_id: str, args: tuple[int, ...]
) -> InequalityReport:
    if ineq_id not in STATE_IDS:
        raise ValueError(f"{ineq_id} is not a state inequality")
    if len(args) != ARITY[ineq_id]:
        raise ValueError(f"{ineq_id} takes {ARITY[ineq_id]} arguments, got {len(args)}")
    mt = oml.meet
    if ineq_id == "B1":
        a, b = args
        return _report(ineq_id, args, m(a) + m(b) - m(mt[a][b]), ONE, "le")
    if ineq_id == "B2":
        a, b, c = args
        lhs = m(a) + m(b) + m(c) - m(mt[a][b]) - m(mt[a][c]) - m(mt[b][c])
        return _report(ineq_id, args, lhs, ONE, "le")
    if ineq_id == "C1":
        a, b, c, d = args
        lhs = m(b) + m(c)
        rhs = m(mt[a][b]) + m(mt[b][c]) + m(mt[c][d]) - m(mt[a][d])
        return _report(ineq_id, args, lhs, rhs, "ge")
    a, b, c, d = args  # C2
    lhs = m(mt[a][b]) + m(mt[b][c]) + m(mt[c][d]) - m(mt[a][d]) - m(b) - m(c)
    return _report(ineq_id, args, lhs, -ONE, "ge")


def eval_smap_inequality(
    oml: Oml,
    p: SMap,
    ineq_id: str,
    args: tuple[int, ...],
    variant: int = 0,
    d: DMap | None = None,
) -> InequalityReport:
    """Evaluate a primed or triangle inequality.

    `variant` toggles the argument order of each joint term independently
    (bit i swaps the i-th joint term as displayed); triangle forms have a
    single variant.
    """
    if ineq_id not in SMAP_IDS:
        raise ValueError(f"{ineq_id} is not an s-map inequality")
    if len(args) != ARITY[ineq_id]:
        raise ValueError(f"{ineq_id} takes {ARITY[ineq_id]} arguments, got {len(args)}")
    terms = JOINT_TERMS.get(ineq_id, 0)
    if not 0 <= variant < max(1, 2**terms):
        raise ValueError(f"variant {variant} out of range for {ineq_id}")

    def jp(i: int, x: int, y: int) -> Fraction:
        return p(y, x) if variant >> i & 1 else p(x, y)

    if ineq_id == "B1p":
        a, b = args
        lhs = p(a, a) + p(b, b) - jp(0, a, b)
        return _report(ineq_id, args, lhs, ONE, "le", variant)
    if ineq_id == "B2p":
        a, b, c = args
        lhs = (
            p(a, a) + p(b, b) + p(c, c)
            - jp(0, a, b) - jp(1, a, c) - jp(2, b, c)
        )
        return _report(ineq_id, args, lhs, ONE, "le", variant)
    if ineq_id == "C1p":
        a, b, c, d_ = args
        lhs = p(b, b) + p(c, c)
        rhs = jp(0, a, b) + jp(1, b, c) + jp(2, c, d_) - jp(3, a, d_)
        return _report(ineq_id, args, lhs, rhs, "ge", variant)
    if ineq_id == "C2p":
        a, b, c, d_ = args
        lhs = jp(0, a, b) + jp(1, b, c) + jp(2, c, d_) - jp(3, a, d_) - p(b, b) - p(c, c)
        return _report(ineq_id, args, lhs, -ONE, "ge", variant)

    dp = d if d is not None else dmap_from_smap(p)
    if ineq_id == "TRI":
        a, b, c = args
        bo = oml.ortho[b]
        return _report(ineq_id, args, dp(a, c), dp(a, bo) + dp(bo, c), "le")
    if ineq_id == "TRIp":
        a, b, c, d_ = args
        return _report(ineq_id, args, dp(a, d_), dp(a, b) + dp(b, c) + dp(c, d_), "le")
    a, b, c, d_ = args  # TRIpp
    lhs = dp(a, b) + dp(b, c) + dp(c, d_)
    return _report(ineq_id, args, lhs, TWO + dp(a, d_), "le")


@dataclass
class ScanResult:
    id: str
    tuples_checked: int
    evaluations: int
    violations: list[InequalityReport] = field(default_factory=list)

    @property
    def violation_count(self) -> int:
        return len(self.violations)


def scan(
    oml: Oml,
    measure: State | SMap,
    ineq_id: str,
    order_variants: bool = False,
) -> ScanResult:
    """Evaluate one inequality over all element tuples (repetition allowed).

    With `order_variants`, every argument-order counterpart of each joint
    term is evaluated (2 for B1p, 8 for B2p, 16 for C1p/C2p).
    """
    arity = ARITY[ineq_id]
    is_state = ineq_id in STATE_IDS
    if is_state and not isinstance(measure, State):
        raise ValueError(f"{ineq_id} needs a state")
    if not is_state and not isinstance(measure, SMap):
        raise ValueError(f"{ineq_id} needs an s-map")
    nvariants = 2 ** JOINT_TERMS.get(ineq_id, 0) if order_variants else 1
    d = dmap_from_smap(measure) if ineq_id in ("TRI", "TRIp", "TRIpp") else None

    violations = []
    tuples = 0
    evals = 0
    for args in itertools.product(oml.elements(), repeat=arity):
        tuples += 1
        for variant in range(nvariants):
            evals += 1
            if is_state:
                rep = eval_state_inequality(oml, measure, ineq_id, args)
            else:
                rep = eval_smap_inequality(oml, measure, ineq_id, args, variant, d=d)
            if not rep.satisfied:
                violations.append(rep)
    violations.sort(key=lambda r: (r.args, r.variant))
    return ScanResult(ineq_id, tuples, evals, violations)


def equivalence_audit(oml: Oml, p: SMap) -> ValidationReport:
    """Tuple-wise indicator equivalences between primed and triangle forms,
    plus the commutative implication from B2p to the Clauser-Horne forms.

    Both directions of each equivalence are reported separately.
    """
    rep = ValidationReport()
    d = dmap_from_smap(p)

    b2_all_ok = True
    for args in itertools.product(oml.elements(), repeat=3):
        b2 = eval_smap_inequality(oml, p, "B2p", args).satisfied
        tri = eval_smap_inequality(oml, p, "TRI", args, d=d).satisfied
        b2_all_ok = b2_all_ok and b2
        if b2 and not tri:
            rep.add("B2p-implies-TRI", args)
        if tri and not b2:
            rep.add("TRI-implies-B2p", args)

    c1_ok = True
    c2_ok = True
    for args in itertools.product(oml.elements(), repeat=4):
        c1 = eval_smap_inequality(oml, p, "C1p", args).satisfied
        trip = eval_smap_inequality(oml, p, "TRIp", args, d=d).satisfied
        if c1 and not trip:
            rep.add("C1p-implies-TRIp", args)
        if trip and not c1:
            rep.add("TRIp-implies-C1p", args)
        c2 = eval_smap_inequality(oml, p, "C2p", args).satisfied
        tripp = eval_smap_inequality(oml, p, "TRIpp", args, d=d).satisfied
        if c2 and not tripp:
            rep.add("C2p-implies-TRIpp", args)
        if tripp and not c2:
            rep.add("TRIpp-implies-C2p", args)
        c1_ok = c1_ok and c1
        c2_ok = c2_ok and c2

    if p.is_commutative and b2_all_ok:
        if not c1_ok:
            rep.add("prop2-C1p", ())
        if not c2_ok:
            rep.add("prop2-C2p", ())
    return rep
