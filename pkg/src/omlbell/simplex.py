"""Exact phase-1/phase-2 simplex over rationals with Bland's rule.

Pipeline: equality constraints are eliminated by sparse Gaussian reduction
(with provenance, so infeasibility certificates map back to the original
constraints), the remaining inequality and bound rows are substituted into
the free variables and deduplicated, and a small dense simplex finishes the
job.  Arithmetic uses gmpy2.mpq when available (bit-identical to Fraction,
just faster); all published witnesses and certificates are Fractions and
are re-verified before being returned.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    Q = Fraction

from .linsystem import (
    EQ,
    GE,
    KIND_CONSTRAINT,
    KIND_LOWER,
    KIND_UPPER,
    FeasibilityResult,
    LinSystem,
    verify_certificate,
    verify_witness,
)

Q0 = Q(0)
Q1 = Q(1)

_MAX_PIVOTS = 200_000


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


class _Row:
    """Sparse linear row with provenance over certificate keys."""

    __slots__ = ("coeffs", "rhs", "prov")

    def __init__(self, coeffs, rhs, prov):
        self.coeffs = coeffs  # dict[int, Q]
        self.rhs = rhs
        self.prov = prov  # dict[(kind, index), Q]

    def sub_scaled(self, factor, other: "_Row") -> None:
        for j, c in other.coeffs.items():
            v = self.coeffs.get(j, Q0) - factor * c
            if v == 0:
                self.coeffs.pop(j, None)
            else:
                self.coeffs[j] = v
        self.rhs -= factor * other.rhs
        for key, m in other.prov.items():
            v = self.prov.get(key, Q0) - factor * m
            if v == 0:
                self.prov.pop(key, None)
            else:
                self.prov[key] = v

    def scale(self, factor) -> None:
        self.coeffs = {j: factor * c for j, c in self.coeffs.items()}
        self.rhs *= factor
        self.prov = {k: factor * m for k, m in self.prov.items()}


class Infeasible(Exception):
    def __init__(self, certificate):
        self.certificate = certificate


def _certificate_from_row(row: _Row):
    """A row that reduced to (0 = rhs != 0) or (0 <= rhs < 0) certifies."""
    sign = Q(-1) if row.rhs > 0 else Q1
    return [(kind, idx, _frac(sign * m)) for (kind, idx), m in row.prov.items()]


class ReducedModel:
    """Equality-eliminated form of a LinSystem, reusable across objectives."""

    def __init__(self, system: LinSystem):
        self.system = system
        self.pivots: dict[int, _Row] = {}
        self._eliminate_equalities()
        self.free: list[int] = [
            j for j in range(system.nvars) if j not in self.pivots
        ]
        self.col_of = {j: k for k, j in enumerate(self.free)}
        self.rows: list[_Row] = self._reduced_rows()

    # -- equality elimination ----------------------------------------------

    def _reduce_against_pivots(self, row: _Row) -> None:
        while True:
            hit = [j for j in row.coeffs if j in self.pivots]
            if not hit:
                return
            j = min(hit)
            row.sub_scaled(row.coeffs[j], self.pivots[j])

    def _eliminate_equalities(self) -> None:
        order: list[int] = []
        for i, con in enumerate(self.system.constraints):
            if con.rel != EQ:
                continue
            row = _Row(
                {j: Q(c.numerator, c.denominator) for j, c in con.coeffs.items()},
                Q(con.rhs.numerator, con.rhs.denominator),
                {(KIND_CONSTRAINT, i): Q1},
            )
            self._reduce_against_pivots(row)
            if not row.coeffs:
                if row.rhs != 0:
                    raise Infeasible(_certificate_from_row(row))
                continue
            piv = min(row.coeffs)
            row.scale(Q1 / row.coeffs[piv])
            self.pivots[piv] = row
            order.append(piv)
        # forward pass left earlier rows referencing later pivots; clear them
        for piv in reversed(order):
            row = self.pivots[piv]
            for j in sorted(k for k in row.coeffs if k != piv and k in self.pivots):
                if j in row.coeffs:
                    row.sub_scaled(row.coeffs[j], self.pivots[j])

    # -- inequality/bound rows over free variables ---------------------------

    def _reduced_rows(self) -> list[_Row]:
        base: list[_Row] = []
        for i, con in enumerate(self.system.constraints):
            if con.rel == EQ:
                continue
            sign = -1 if con.rel == GE else 1
            base.append(
                _Row(
                    {
                        j: Q(sign * c.numerator, c.denominator)
                        for j, c in con.coeffs.items()
                    },
                    Q(sign * con.rhs.numerator, con.rhs.denominator),
                    {(KIND_CONSTRAINT, i): Q1},
                )
            )
        for j, (lo, hi) in enumerate(self.system.bounds):
            base.append(
                _Row({j: Q1}, Q(hi.numerator, hi.denominator), {(KIND_UPPER, j): Q1})
            )
            # free variables are nonnegative by construction (lo >= 0); their
            # zero lower bound needs no row, eliminated variables always do
            if lo > 0 or j in self.pivots:
                base.append(
                    _Row(
                        {j: Q(-1)},
                        Q(-lo.numerator, lo.denominator),
                        {(KIND_LOWER, j): Q1},
                    )
                )
        best: dict[tuple, _Row] = {}
        for row in base:
            self._reduce_against_pivots(row)
            if not row.coeffs:
                if row.rhs < 0:
                    raise Infeasible(_certificate_from_row(row))
                continue
            key = tuple(sorted(row.coeffs.items()))
            kept = best.get(key)
            if kept is None or row.rhs < kept.rhs:
                best[key] = row
        return list(best.values())

    # -- simplex -------------------------------------------------------------

    def _tableau(self):
        m = len(self.rows)
        nf = len(self.free)
        slack0 = nf
        art_cols: dict[int, int] = {}
        ncols = nf + m
        flipped = [row.rhs < 0 for row in self.rows]
        for i, f in enumerate(flipped):
            if f:
                art_cols[i] = ncols
                ncols += 1
        T = []
        basis = []
        for i, row in enumerate(self.rows):
            sign = -1 if flipped[i] else 1
            line = [Q0] * (ncols + 1)
            for j, c in row.coeffs.items():
                line[self.col_of[j]] = sign * c
            line[slack0 + i] = Q(sign)
            line[ncols] = sign * row.rhs
            if flipped[i]:
                line[art_cols[i]] = Q1
                basis.append(art_cols[i])
            else:
                basis.append(slack0 + i)
            T.append(line)
        return T, basis, slack0, art_cols, ncols, flipped

    @staticmethod
    def _pivot(T, basis, zrow, r, c):
        inv = Q1 / T[r][c]
        T[r] = [v * inv for v in T[r]]
        prow = T[r]
        for i, line in enumerate(T):
            if i != r and line[c] != 0:
                f = line[c]
                T[i] = [a - f * b for a, b in zip(line, prow)]
        if zrow[c] != 0:
            f = zrow[c]
            for k in range(len(zrow)):
                zrow[k] -= f * prow[k]
        basis[r] = c

    @staticmethod
    def _run_simplex(T, basis, zrow, allowed):
        """Minimize; Bland's rule: lowest eligible entering/leaving index."""
        m = len(T)
        pivots = 0
        while True:
            enter = next((j for j in allowed if zrow[j] > 0), None)
            if enter is None:
                return
            leave, best = None, None
            for i in range(m):
                a = T[i][enter]
                if a > 0:
                    ratio = T[i][-1] / a
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and basis[i] < basis[leave])
                    ):
                        leave, best = i, ratio
            if leave is None:
                raise RuntimeError("unbounded direction in box-bounded system")
            ReducedModel._pivot(T, basis, zrow, leave, enter)
            pivots += 1
            if pivots > _MAX_PIVOTS:
                raise RuntimeError("pivot limit exceeded")

    def _phase1(self):
        T, basis, slack0, art_cols, ncols, flipped = self._tableau()
        art_set = set(art_cols.values())
        zrow = [Q0] * (ncols + 1)
        for i in range(len(T)):
            if basis[i] in art_set:
                for k in range(ncols + 1):
                    zrow[k] += T[i][k]
        for j in art_set:
            zrow[j] -= Q1
        allowed = [j for j in range(ncols) if j not in art_set]
        self._run_simplex(T, basis, zrow, allowed)
        return T, basis, slack0, art_cols, ncols, flipped, zrow[ncols], allowed

    def _infeasibility_certificate(self, T, basis, slack0, art_cols, flipped):
        """Phase-1 duals, mapped back onto the original constraints."""
        m = len(T)
        art_set = set(art_cols.values())

        def dual(i: int):
            # column that started as e_i holds B^-1 e_i after pivoting
            col = art_cols.get(i, slack0 + i)
            return sum(
                (T[r][col] for r in range(m) if basis[r] in art_set), Q0
            )

        cert: dict[tuple[str, int], object] = {}
        residual: dict[int, object] = {}
        for i, row in enumerate(self.rows):
            lam = -dual(i) * (Q(-1) if flipped[i] else Q1)
            if lam == 0:
                continue
            if lam < 0:
                raise RuntimeError("negative dual multiplier on inequality row")
            for key, mult in row.prov.items():
                cert[key] = cert.get(key, Q0) + lam * mult
            for j, c in row.coeffs.items():
                residual[j] = residual.get(j, Q0) + lam * c
        # absorb the Farkas residual with the variables' lower bounds
        for j, g in residual.items():
            if g == 0:
                continue
            if g < 0:
                raise RuntimeError("negative Farkas residual on a variable")
            key = (KIND_LOWER, j)
            cert[key] = cert.get(key, Q0) + g
        return [(kind, idx, _frac(v)) for (kind, idx), v in cert.items() if v != 0]

    def _purge_artificials(self, T, basis, art_cols, allowed, ncols):
        """Pivot zero-valued basic artificials out so phase 2 cannot revive them."""
        art_set = set(art_cols.values())
        dummy = [Q0] * (ncols + 1)
        for i in range(len(T)):
            if basis[i] in art_set:
                col = next((j for j in allowed if T[i][j] != 0), None)
                if col is not None:
                    self._pivot(T, basis, dummy, i, col)
                # an all-zero row is a redundant constraint; leave it basic

    def _witness_from_tableau(self, T, basis) -> list[Fraction]:
        nf = len(self.free)
        xfree = [Q0] * nf
        for i, b in enumerate(basis):
            if b < nf:
                xfree[b] = T[i][-1]
        x = [Q0] * self.system.nvars
        for k, j in enumerate(self.free):
            x[j] = xfree[k]
        for piv, row in self.pivots.items():
            v = row.rhs
            for j, c in row.coeffs.items():
                if j != piv:
                    v -= c * x[j]
            x[piv] = v
        return [_frac(v) for v in x]

    # -- public entry points -------------------------------------------------

    def solve(self) -> FeasibilityResult:
        try:
            T, basis, slack0, art_cols, ncols, flipped, w, _ = self._phase1()
        except Infeasible as exc:
            assert verify_certificate(self.system, exc.certificate)
            return FeasibilityResult("infeasible", certificate=exc.certificate)
        if w > 0:
            cert = self._infeasibility_certificate(T, basis, slack0, art_cols, flipped)
            assert verify_certificate(self.system, cert)
            return FeasibilityResult("infeasible", certificate=cert)
        x = self._witness_from_tableau(T, basis)
        assert verify_witness(self.system, x)
        return FeasibilityResult("feasible", witness=x)

    def optimize(
        self, objective: dict[int, Fraction], sense: str
    ) -> FeasibilityResult:
        if sense not in ("max", "min"):
            raise ValueError("sense must be 'max' or 'min'")
        try:
            T, basis, slack0, art_cols, ncols, flipped, w, allowed = self._phase1()
        except Infeasible as exc:
            assert verify_certificate(self.system, exc.certificate)
            return FeasibilityResult("infeasible", certificate=exc.certificate)
        if w > 0:
            cert = self._infeasibility_certificate(T, basis, slack0, art_cols, flipped)
            assert verify_certificate(self.system, cert)
            return FeasibilityResult("infeasible", certificate=cert)
        self._purge_artificials(T, basis, art_cols, allowed, ncols)

        obj_row = _Row(
            {
                j: Q(c.numerator, c.denominator)
                for j, c in objective.items()
                if c != 0
            },
            Q0,
            {},
        )
        self._reduce_against_pivots(obj_row)
        sign = -1 if sense == "max" else 1  # minimize internally
        cost = [Q0] * ncols
        for j, c in obj_row.coeffs.items():
            cost[self.col_of[j]] = sign * c
        zrow = [Q0] * (ncols + 1)
        for i in range(len(T)):
            cb = cost[basis[i]]
            if cb != 0:
                for k in range(ncols + 1):
                    zrow[k] += cb * T[i][k]
        for j in range(ncols):
            zrow[j] -= cost[j]
        self._run_simplex(T, basis, zrow, allowed)
        x = self._witness_from_tableau(T, basis)
        assert verify_witness(self.system, x)
        value = sum((Fraction(c) * x[j] for j, c in objective.items()), Fraction(0))
        return FeasibilityResult("feasible", witness=x, objective_value=value)


def _build(system: LinSystem) -> ReducedModel | FeasibilityResult:
    try:
        return ReducedModel(system)
    except Infeasible as exc:
        assert verify_certificate(system, exc.certificate)
        return FeasibilityResult("infeasible", certificate=exc.certificate)


def solve(system: LinSystem) -> FeasibilityResult:
    """Exact feasibility: witness or verified infeasibility certificate."""
    model = _build(system)
    if isinstance(model, FeasibilityResult):
        return model
    return model.solve()


def optimize(
    system: LinSystem, objective: dict[int, Fraction], sense: str
) -> FeasibilityResult:
    """Exact optimum of a linear objective over the system's polytope."""
    model = _build(system)
    if isinstance(model, FeasibilityResult):
        return model
    return model.optimize(objective, sense)
