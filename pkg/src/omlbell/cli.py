"""Command-line surface.

Exit codes: 0 = success / satisfied, 1 = violations found or infeasible
(expected analytic outcomes), 2 = input or validation error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import bundled
from .documents import parse_lattice, parse_map, serialize_lattice, serialize_map
from .errors import OmlBellError
from .inequalities import (
    ARITY,
    SMAP_IDS,
    STATE_IDS,
    eval_smap_inequality,
    eval_state_inequality,
    scan,
)
from .inequalities import equivalence_audit
from .lattice import GreechieDiagram, build_boolean, build_from_greechie, build_mo
from .linsystem import verify_certificate
from .maps import SMap, State, de_morgan_audit, smap_validate
from .rationals import format_rational
from .simplex import solve, optimize
from .smap_systems import (
    assemble_extension_system,
    assemble_smap_system,
    sample_smaps,
)

BUNDLED_LATTICES = ("example1", "example1-lattice")
BUNDLED_MAPS = ("example1", "example1-smap")


def _load_lattice(ref: str):
    if ref in BUNDLED_LATTICES:
        return bundled.resolve_lattice(ref)
    with open(ref) as fh:
        return parse_lattice(fh.read())


def _load_map(ref: str, oml=None):
    if ref in BUNDLED_MAPS:
        return bundled.resolve_map(ref)
    with open(ref) as fh:
        return parse_map(fh.read(), oml)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(value: Fraction, args) -> str:
    return format_rational(value, decimal=getattr(args, "decimal", False))


def _parse_args_labels(oml, labels: str, ineq_id: str) -> tuple[int, ...]:
    ids = tuple(oml.index_of(s.strip()) for s in labels.split(","))
    if len(ids) != ARITY[ineq_id]:
        raise OmlBellError(
            f"{ineq_id} takes {ARITY[ineq_id]} arguments, got {len(ids)}"
        )
    return ids


# ---------------------------------------------------------------------------
# subcommands


def _cmd_gen(args) -> int:
    if args.kind == "boolean":
        oml = build_boolean(args.atoms)
    elif args.kind == "mo":
        oml = build_mo(args.n)
    elif args.kind == "greechie":
        blocks = tuple(
            tuple(int(a) for a in blk.split(",")) for blk in args.blocks.split(";")
        )
        atom_count = max(a for blk in blocks for a in blk) + 1
        oml = build_from_greechie(GreechieDiagram(atom_count, blocks))
    else:
        raise OmlBellError(f"unknown builder kind {args.kind!r}")
    _emit(serialize_lattice(oml), args.out)
    return 0


def _cmd_validate(args) -> int:
    from .lattice import validate_oml

    code = 0
    if args.lattice:
        oml = _load_lattice(args.lattice)
        rep = validate_oml(oml)
        print(f"lattice: {rep.summary()}")
        code = max(code, 0 if rep.valid else 1)
    else:
        oml = None
    if args.map:
        try:
            m = _load_map(args.map, oml)
        except OmlBellError as exc:
            # a map that parses but fails its axioms is an analytic outcome
            if getattr(exc, "report", None) is not None:
                print(f"map: {exc.report.summary()}")
                return 1
            raise
        kind = type(m).__name__
        print(f"map: valid {kind} on {m.lattice!r}")
    return code


def _cmd_check(args) -> int:
    m = _load_map(args.map)
    oml = m.lattice
    ids = _parse_args_labels(oml, args.args, args.ineq)
    if args.ineq in STATE_IDS:
        if not isinstance(m, State):
            raise OmlBellError(f"{args.ineq} needs a state (arity-1 map)")
        rep = eval_state_inequality(oml, m, args.ineq, ids)
    elif args.ineq in SMAP_IDS:
        if not isinstance(m, SMap):
            raise OmlBellError(f"{args.ineq} needs an s-map (arity-2 map)")
        rep = eval_smap_inequality(oml, m, args.ineq, ids)
    else:
        raise OmlBellError(f"unknown inequality tag {args.ineq!r}")
    verdict = "satisfied" if rep.satisfied else "VIOLATED"
    print(
        f"{rep.id}{tuple(oml.labels[i] for i in rep.args)}: "
        f"lhs={_fmt(rep.lhs, args)} rhs={_fmt(rep.rhs, args)} "
        f"slack={_fmt(rep.slack, args)} {verdict}"
    )
    return 0 if rep.satisfied else 1


def _cmd_scan(args) -> int:
    m = _load_map(args.map)
    oml = m.lattice
    result = scan(oml, m, args.ineq, order_variants=args.variants)
    print(
        f"{args.ineq}: {result.tuples_checked} tuples, "
        f"{result.evaluations} evaluations, "
        f"{result.violation_count} violation(s)"
    )
    for rep in result.violations:
        labels = ",".join(oml.labels[i] for i in rep.args)
        print(
            f"  ({labels}) variant {rep.variant}: "
            f"lhs={_fmt(rep.lhs, args)} rhs={_fmt(rep.rhs, args)}"
        )
    return 1 if result.violations else 0


def _cmd_audit(args) -> int:
    m = _load_map(args.map)
    if not isinstance(m, SMap):
        raise OmlBellError("audit needs an s-map (arity-2 map)")
    dm = de_morgan_audit(m)
    eq = equivalence_audit(m.lattice, m)
    print(f"de-morgan: {dm.summary()}")
    print(f"equivalences: {eq.summary()}")
    return 0 if dm.valid and eq.valid else 1


def _cmd_find_smap(args) -> int:
    oml = _load_lattice(args.lattice)
    fixed_state = None
    if args.fix_state:
        st = _load_map(args.fix_state, oml)
        if not isinstance(st, State):
            raise OmlBellError("--fix-state needs an arity-1 map document")
        fixed_state = st
    if args.count > 1:
        maps = sample_smaps(
            oml,
            args.count,
            args.seed,
            commutative=args.commutative,
            fixed_state=fixed_state,
        )
        if not maps:
            print("infeasible: no s-map exists under these constraints")
            return 1
        print(f"sampled {len(maps)} s-map(s), all validated")
        if args.out:
            _emit(serialize_map(maps[0]), args.out)
        return 0
    system = assemble_smap_system(
        oml, commutative=args.commutative, fixed_state=fixed_state
    )
    result = solve(system)
    if not result.feasible:
        ok = verify_certificate(system, result.certificate)
        print(f"infeasible (certificate verified: {ok})")
        return 1
    from .smap_systems import smap_from_witness

    smap = smap_from_witness(oml, result.witness)
    print("feasible: s-map found and validated")
    if args.out:
        _emit(serialize_map(smap), args.out)
    return 0


def _cmd_max(args) -> int:
    oml = _load_lattice(args.lattice)
    ids = _parse_args_labels(oml, args.args, args.ineq)
    system = assemble_smap_system(oml, commutative=args.commutative)
    n = oml.size

    def var(a: int, b: int) -> int:
        return a * n + b

    objective: dict[int, Fraction] = {}

    def bump(j: int, c: int) -> None:
        objective[j] = objective.get(j, Fraction(0)) + c

    if args.ineq == "B1p":
        a, b = ids
        bump(var(a, a), 1), bump(var(b, b), 1), bump(var(a, b), -1)
    elif args.ineq == "B2p":
        a, b, c = ids
        for x in (a, b, c):
            bump(var(x, x), 1)
        bump(var(a, b), -1), bump(var(a, c), -1), bump(var(b, c), -1)
    elif args.ineq == "C1p":
        a, b, c, d = ids
        bump(var(b, b), 1), bump(var(c, c), 1)
    elif args.ineq == "C2p":
        a, b, c, d = ids
        bump(var(a, b), 1), bump(var(b, c), 1), bump(var(c, d), 1)
        bump(var(a, d), -1), bump(var(b, b), -1), bump(var(c, c), -1)
    else:
        raise OmlBellError(f"max supports B1p/B2p/C1p/C2p, not {args.ineq!r}")
    result = optimize(system, objective, "max")
    if not result.feasible:
        print("infeasible: no s-map exists on this lattice")
        return 1
    print(f"maximum {args.ineq} LHS = {_fmt(result.objective_value, args)}")
    return 0


def _cmd_extend(args) -> int:
    m = _load_map(args.map)
    if not isinstance(m, SMap):
        raise OmlBellError("extend needs an s-map (arity-2 map)")
    system = assemble_extension_system(m.lattice, m)
    result = solve(system)
    if result.feasible:
        print("feasible: a trivariate extension exists")
        return 0
    ok = verify_certificate(system, result.certificate)
    print(f"infeasible: no trivariate extension (certificate verified: {ok})")
    return 1


def _cmd_example1(args) -> int:
    oml = bundled.example1_lattice()
    p = bundled.example1_smap()
    print(f"lattice: {oml!r}")
    print(f"blocks: {[sorted(b) for b in oml.blocks]}")
    rep = smap_validate(oml, p.values)
    print(f"s-map validation: {rep.summary()}")
    ids = tuple(oml.index_of(x) for x in ("a1", "a2", "a3"))
    ineq = eval_smap_inequality(oml, p, "B2p", ids)
    print(
        f"B2p(a1,a2,a3): lhs={_fmt(ineq.lhs, args)} > rhs={_fmt(ineq.rhs, args)}"
        if not ineq.satisfied
        else f"B2p(a1,a2,a3): satisfied, lhs={_fmt(ineq.lhs, args)}"
    )
    return 0 if ineq.satisfied and rep.valid else 1


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omlbell",
        description="Bell-type inequalities and s-maps on finite orthomodular lattices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, lattice=False, map_=False, ineq=False, tuple_args=False):
        if lattice:
            p.add_argument("--lattice", required=lattice == "required")
        if map_:
            p.add_argument("--map", required=map_ == "required")
        if ineq:
            p.add_argument("--ineq", required=True)
        if tuple_args:
            p.add_argument("--args", required=True, help="comma-joined element labels")
        p.add_argument("--out", default=None)
        p.add_argument("--decimal", action="store_true")

    p = sub.add_parser("gen", help="emit a lattice document from a builder")
    p.add_argument("--kind", required=True, choices=["boolean", "mo", "greechie"])
    p.add_argument("--atoms", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--blocks", default="", help='e.g. "0,1,2;2,3,4"')
    common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("validate", help="validate a lattice and/or map document")
    common(p, lattice=True, map_=True)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("check", help="evaluate one inequality instance")
    common(p, map_="required", ineq=True, tuple_args=True)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("scan", help="evaluate an inequality over all tuples")
    common(p, map_="required", ineq=True)
    p.add_argument("--variants", action="store_true")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("audit", help="De Morgan and equivalence audits")
    common(p, map_="required")
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("find-smap", help="s-map existence / sampling")
    common(p, lattice="required")
    p.add_argument("--commutative", action="store_true")
    p.add_argument("--fix-state", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=_cmd_find_smap)

    p = sub.add_parser("max", help="maximize an inequality LHS over s-maps")
    common(p, lattice="required", ineq=True, tuple_args=True)
    p.add_argument("--commutative", action="store_true")
    p.set_defaults(func=_cmd_max)

    p = sub.add_parser("extend", help="trivariate extension feasibility")
    common(p, map_="required")
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("example1", help="bundled reproduction")
    common(p)
    p.set_defaults(func=_cmd_example1)
    return parser


def run_cli(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (OmlBellError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
