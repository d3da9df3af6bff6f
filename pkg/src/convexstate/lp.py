"""Two-phase dense simplex with Bland's anti-cycling rule, over exact rationals.

The kernel pivots on ``fractions.Fraction`` tableaus, so rational-mode
solutions are exact: optimal points satisfy every constraint with zero
error and can serve as certificates.  ``mode="float"`` runs the same exact
kernel on the (exactly representable) rational values of the float inputs
and converts the answer back, so it inherits the exactness guarantee up to
the final conversion.

Problems are stated as

    minimize c.x   s.t.   a_eq x == b_eq,  a_ub x <= b_ub,  lo <= x <= hi

with per-variable bounds; ``None`` means unbounded on that side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rat(x) -> Fraction:
    """Exact conversion: ints, Fractions, 'p/q' strings, and binary floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("refusing to treat a bool as a number")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)  # floats are dyadic rationals; this is exact
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


@dataclass(frozen=True)
class LPProblem:
    objective: tuple[Fraction, ...]
    a_eq: tuple[tuple[Fraction, ...], ...]
    b_eq: tuple[Fraction, ...]
    a_ub: tuple[tuple[Fraction, ...], ...]
    b_ub: tuple[Fraction, ...]
    bounds: tuple[tuple[Fraction | None, Fraction | None], ...]

    @staticmethod
    def make(objective: Sequence, a_eq: Sequence | None = (), b_eq: Sequence | None = (),
             a_ub: Sequence | None = (), b_ub: Sequence | None = (),
             bounds: Sequence | None = None) -> "LPProblem":
        c = tuple(rat(x) for x in objective)
        n = len(c)
        a_eq = () if a_eq is None else a_eq
        b_eq = () if b_eq is None else b_eq
        a_ub = () if a_ub is None else a_ub
        b_ub = () if b_ub is None else b_ub

        def _rows(rows, rhs, label):
            out_rows, out_rhs = [], []
            for i, row in enumerate(rows):
                r = tuple(rat(x) for x in row)
                if len(r) != n:
                    raise ValueError(
                        f"{label} row {i} has {len(r)} entries, expected {n}"
                    )
                out_rows.append(r)
            for x in rhs:
                out_rhs.append(rat(x))
            if len(out_rows) != len(out_rhs):
                raise ValueError(f"{label}: row/rhs count mismatch")
            return tuple(out_rows), tuple(out_rhs)

        aeq, beq = _rows(a_eq, b_eq, "a_eq")
        aub, bub = _rows(a_ub, b_ub, "a_ub")
        if bounds is None:
            bnds = tuple((_ZERO, None) for _ in range(n))
        else:
            if len(bounds) != n:
                raise ValueError("bounds length must match variable count")
            bnds = tuple(
                (None if lo is None else rat(lo), None if hi is None else rat(hi))
                for lo, hi in bounds
            )
        return LPProblem(c, aeq, beq, aub, bub, bnds)


@dataclass(frozen=True)
class LPSolution:
    status: str
    value: Fraction | float | None
    point: tuple | None


def lp_solve(problem: LPProblem, mode: str = "rational") -> LPSolution:
    if mode not in ("rational", "float"):
        raise ValueError(f"mode must be 'rational' or 'float', got {mode!r}")
    status, point = _solve_exact(problem)
    if status != OPTIMAL:
        return LPSolution(status, None, None)
    value = sum((c * x for c, x in zip(problem.objective, point)), _ZERO)
    _verify(problem, point)
    if mode == "float":
        return LPSolution(OPTIMAL, float(value), tuple(float(x) for x in point))
    return LPSolution(OPTIMAL, value, tuple(point))


def _verify(problem: LPProblem, point: Sequence[Fraction]) -> None:
    """Exact feasibility re-check of a claimed optimum (defensive)."""
    from .errors import InternalCheckError

    for row, b in zip(problem.a_eq, problem.b_eq):
        if sum((a * x for a, x in zip(row, point)), _ZERO) != b:
            raise InternalCheckError("simplex returned an infeasible point (eq)")
    for row, b in zip(problem.a_ub, problem.b_ub):
        if sum((a * x for a, x in zip(row, point)), _ZERO) > b:
            raise InternalCheckError("simplex returned an infeasible point (ub)")
    for x, (lo, hi) in zip(point, problem.bounds):
        if lo is not None and x < lo:
            raise InternalCheckError("simplex returned an infeasible point (lo)")
        if hi is not None and x > hi:
            raise InternalCheckError("simplex returned an infeasible point (hi)")


# ---------------------------------------------------------------------------
# Exact kernel
# ---------------------------------------------------------------------------

def _solve_exact(problem: LPProblem) -> tuple[str, list[Fraction] | None]:
    n = len(problem.objective)

    # Substitute each variable by nonnegative ones and collect the recipe
    # needed to map kernel variables back: x_j = shift + sum(sign * y_k).
    terms: list[list[tuple[int, int]]] = []  # per original var: [(y index, sign)]
    shifts: list[Fraction] = []
    ny = 0
    extra_ub: list[tuple[list[tuple[int, Fraction]], Fraction]] = []
    for j, (lo, hi) in enumerate(problem.bounds):
        if lo is None and hi is None:
            terms.append([(ny, +1), (ny + 1, -1)])
            shifts.append(_ZERO)
            ny += 2
        elif lo is not None and hi is None:
            terms.append([(ny, +1)])
            shifts.append(lo)
            ny += 1
        elif lo is None and hi is not None:
            terms.append([(ny, -1)])
            shifts.append(hi)
            ny += 1
        else:
            if hi < lo:
                return INFEASIBLE, None
            terms.append([(ny, +1)])
            shifts.append(lo)
            extra_ub.append(([(ny, _ONE)], hi - lo))
            ny += 1

    def to_y_row(row: Sequence[Fraction]) -> tuple[list[Fraction], Fraction]:
        """Rewrite a constraint row over original vars in kernel variables;
        returns (coefficients, rhs adjustment from shifts)."""
        coeffs = [_ZERO] * ny
        shift_part = _ZERO
        for j, a in enumerate(row):
            if a == 0:
                continue
            shift_part += a * shifts[j]
            for yk, sign in terms[j]:
                coeffs[yk] += a if sign > 0 else -a
        return coeffs, shift_part

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    row_is_eq: list[bool] = []
    for row, b in zip(problem.a_eq, problem.b_eq):
        coeffs, shift_part = to_y_row(row)
        rows.append(coeffs)
        rhs.append(b - shift_part)
        row_is_eq.append(True)
    for row, b in zip(problem.a_ub, problem.b_ub):
        coeffs, shift_part = to_y_row(row)
        rows.append(coeffs)
        rhs.append(b - shift_part)
        row_is_eq.append(False)
    for coeffs_sparse, b in extra_ub:
        coeffs = [_ZERO] * ny
        for yk, a in coeffs_sparse:
            coeffs[yk] = a
        rows.append(coeffs)
        rhs.append(b)
        row_is_eq.append(False)

    m = len(rows)
    n_slack = sum(1 for e in row_is_eq if not e)
    ncols = ny + n_slack + m  # y vars, slacks, artificials

    # Tableau rows: [coeffs | rhs], with rhs normalized nonnegative and an
    # artificial basis.  Slack signs flip with the row when rhs was negative.
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    slack_at = ny
    for i in range(m):
        row = list(rows[i]) + [_ZERO] * (n_slack + m) + [rhs[i]]
        if not row_is_eq[i]:
            row[slack_at] = _ONE
            slack_at += 1
        if row[-1] < 0:
            row = [-x for x in row]
        art = ny + n_slack + i
        row[art] = _ONE
        tab.append(row)
        basis.append(art)

    # Phase 1: minimize the sum of artificials.
    cost = [_ZERO] * (ncols + 1)
    for i in range(m):
        for j in range(ncols + 1):
            cost[j] -= tab[i][j]
    for i in range(m):
        cost[basis[i]] = _ZERO
    art_start = ny + n_slack
    status = _iterate(tab, basis, cost, ncols, allowed_max=ncols)
    if status == UNBOUNDED:  # impossible in phase 1; defensive
        return INFEASIBLE, None
    if -cost[-1] != 0:
        return INFEASIBLE, None

    # Drive leftover artificials out of the basis or drop redundant rows.
    keep = []
    for i in range(m):
        if basis[i] >= art_start:
            piv = next(
                (j for j in range(art_start) if tab[i][j] != 0), None
            )
            if piv is None:
                continue  # redundant row
            _pivot(tab, basis, None, i, piv)
        keep.append(i)
    tab = [tab[i] for i in keep]
    basis = [basis[i] for i in keep]
    m = len(tab)

    # Phase 2 cost row from the original objective (restated in y vars).
    cy = [_ZERO] * (ncols + 1)
    for j, cval in enumerate(problem.objective):
        if cval == 0:
            continue
        for yk, sign in terms[j]:
            cy[yk] += cval if sign > 0 else -cval
    cost = list(cy)
    for i in range(m):
        cb = cy[basis[i]]
        if cb != 0:
            for j in range(ncols + 1):
                cost[j] -= cb * tab[i][j]
    status = _iterate(tab, basis, cost, ncols, allowed_max=art_start)
    if status == UNBOUNDED:
        return UNBOUNDED, None

    yvals = [_ZERO] * ncols
    for i in range(m):
        yvals[basis[i]] = tab[i][-1]
    point = []
    for j in range(n):
        x = shifts[j]
        for yk, sign in terms[j]:
            x += yvals[yk] if sign > 0 else -yvals[yk]
        point.append(x)
    return OPTIMAL, point


def _iterate(tab, basis, cost, ncols, allowed_max) -> str:
    """Bland-rule simplex iterations on an existing feasible tableau.

    Entering: lowest-index column with negative reduced cost (restricted to
    columns below ``allowed_max`` so phase 2 never re-enters artificials).
    Leaving: minimum-ratio row, ties broken by lowest basic variable index.
    """
    while True:
        enter = next(
            (j for j in range(allowed_max) if cost[j] < 0), None
        )
        if enter is None:
            return OPTIMAL
        leave, best = None, None
        for i in range(len(tab)):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    leave, best = i, ratio
        if leave is None:
            return UNBOUNDED
        _pivot(tab, basis, cost, leave, enter)


def _pivot(tab, basis, cost, r, c) -> None:
    piv = tab[r][c]
    inv = _ONE / piv
    tab[r] = [x * inv for x in tab[r]]
    prow = tab[r]
    for i in range(len(tab)):
        if i == r:
            continue
        f = tab[i][c]
        if f != 0:
            tab[i] = [x - f * p for x, p in zip(tab[i], prow)]
    if cost is not None:
        f = cost[c]
        if f != 0:
            for j in range(len(cost)):
                cost[j] -= f * prow[j]
    basis[r] = c
