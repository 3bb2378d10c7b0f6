"""
Exact two-phase simplex over the rationals.

Rows are sparse ``{column: Fraction}`` dictionaries. Pivoting follows
Bland's rule; an optional secondary objective breaks ties between optimal
vertices lexicographically (primary first, then secondary), which is the
symbolic form of an infinitesimal cost perturbation.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Literal, Mapping, Optional, Tuple, Union

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]
Sense = Literal["<=", ">=", "=="]
Status = Literal["optimal", "infeasible", "unbounded"]

_ZERO = Fraction(0)


@dataclass
class LinearProgram:
    """minimize objective·x (then secondary·x) subject to rows, x >= 0."""

    num_vars: int
    objective: List[Fraction]
    secondary: Optional[List[Fraction]] = None
    rows: List[Dict[int, Fraction]] = field(default_factory=list)
    senses: List[Sense] = field(default_factory=list)
    rhs: List[Fraction] = field(default_factory=list)

    def add_constraint(self, coeffs: Mapping[int, Number], sense: Sense, rhs: Number) -> int:
        """Append a row and return its index."""
        if sense not in ("<=", ">=", "=="):
            raise ValueError(f"unknown constraint sense '{sense}'")
        row = {j: Fraction(a) for j, a in coeffs.items() if a != 0}
        for j in row:
            if not 0 <= j < self.num_vars:
                raise ValueError(f"column {j} outside [0, {self.num_vars})")
        self.rows.append(row)
        self.senses.append(sense)
        self.rhs.append(Fraction(rhs))
        return len(self.rows) - 1


@dataclass(frozen=True)
class SimplexResult:
    """Outcome of a simplex run; values is a basic solution when optimal."""

    status: Status
    values: Tuple[Fraction, ...] = ()
    objective: Fraction = _ZERO
    secondary_objective: Fraction = _ZERO
    basis: Tuple[int, ...] = ()
    pivots: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"


@dataclass
class _Objective:
    reduced: Dict[int, Fraction]
    value: Fraction


def _axpy(target: Dict[int, Fraction], alpha: Fraction, source: Mapping[int, Fraction]) -> None:
    for k, v in source.items():
        nv = target.get(k, _ZERO) + alpha * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


class _Tableau:
    def __init__(self, rows: List[Dict[int, Fraction]], rhs: List[Fraction], basis: List[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def objective(self, costs: Mapping[int, Fraction]) -> _Objective:
        reduced = {j: c for j, c in costs.items() if c}
        value = _ZERO
        for r, b in enumerate(self.basis):
            cb = costs.get(b, _ZERO)
            if cb:
                value += cb * self.rhs[r]
                _axpy(reduced, -cb, self.rows[r])
        return _Objective(reduced, value)

    def pivot(self, r: int, j: int, objectives: List[_Objective]) -> None:
        a = self.rows[r][j]
        if a != 1:
            self.rows[r] = {k: v / a for k, v in self.rows[r].items()}
            self.rhs[r] /= a
        row, rhs_r = self.rows[r], self.rhs[r]
        for i, other in enumerate(self.rows):
            if i != r:
                coef = other.get(j)
                if coef:
                    _axpy(other, -coef, row)
                    self.rhs[i] -= coef * rhs_r
        for obj in objectives:
            coef = obj.reduced.get(j)
            if coef:
                _axpy(obj.reduced, -coef, row)
                obj.value += coef * rhs_r
        self.basis[r] = j
        self.pivots += 1

    def _entering(self, objectives: List[_Objective]) -> Optional[int]:
        candidates = sorted(set().union(*(obj.reduced.keys() for obj in objectives)))
        for j in candidates:
            for obj in objectives:
                d = obj.reduced.get(j, _ZERO)
                if d < 0:
                    return j
                if d > 0:
                    break
        return None

    def _leaving(self, j: int) -> Optional[int]:
        best: Optional[int] = None
        best_ratio = _ZERO
        for r, row in enumerate(self.rows):
            a = row.get(j, _ZERO)
            if a > 0:
                ratio = self.rhs[r] / a
                if best is None or ratio < best_ratio or (ratio == best_ratio and self.basis[r] < self.basis[best]):
                    best, best_ratio = r, ratio
        return best

    def run(self, objectives: List[_Objective]) -> Status:
        while True:
            j = self._entering(objectives)
            if j is None:
                return "optimal"
            r = self._leaving(j)
            if r is None:
                return "unbounded"
            self.pivot(r, j, objectives)


def solve(lp: LinearProgram) -> SimplexResult:
    """Solve a linear program exactly.

    Args:
        lp: Program in row form with nonnegative variables.

    Returns:
        SimplexResult; on optimality ``values`` is a basic (extreme-point)
        solution that is lexicographically optimal for (objective, secondary).
    """
    n = lp.num_vars
    next_col = n
    rows: List[Dict[int, Fraction]] = []
    rhs: List[Fraction] = []
    basis: List[int] = []
    artificial: List[int] = []

    for coeffs, sense, b in zip(lp.rows, lp.senses, lp.rhs):
        row = dict(coeffs)
        if b < 0:
            row = {j: -a for j, a in row.items()}
            b = -b
            sense = {"<=": ">=", ">=": "<=", "==": "=="}[sense]  # type: ignore[assignment]
        if sense == "<=":
            row[next_col] = Fraction(1)
            basis.append(next_col)
            next_col += 1
        else:
            if sense == ">=":
                row[next_col] = Fraction(-1)
                next_col += 1
            row[next_col] = Fraction(1)
            basis.append(next_col)
            artificial.append(next_col)
            next_col += 1
        rows.append(row)
        rhs.append(b)

    tab = _Tableau(rows, rhs, basis)

    if artificial:
        art = set(artificial)
        phase1 = [tab.objective({j: Fraction(1) for j in artificial})]
        tab.run(phase1)
        if phase1[0].value > 0:
            logger.debug(f"Simplex phase 1 ended with infeasibility {phase1[0].value}")
            return SimplexResult("infeasible", pivots=tab.pivots)

        redundant = []
        for r, b in enumerate(tab.basis):
            if b in art:
                j = next((c for c in sorted(tab.rows[r]) if c not in art), None)
                if j is None:
                    redundant.append(r)
                else:
                    tab.pivot(r, j, [])
        for r in reversed(redundant):
            del tab.rows[r]
            del tab.rhs[r]
            del tab.basis[r]
        for row in tab.rows:
            for j in art:
                row.pop(j, None)
        if redundant:
            logger.debug(f"Simplex dropped {len(redundant)} redundant rows")

    primary = {j: c for j, c in enumerate(lp.objective) if c}
    objectives = [tab.objective(primary)]
    if lp.secondary is not None:
        objectives.append(tab.objective({j: c for j, c in enumerate(lp.secondary) if c}))
    status = tab.run(objectives)
    if status == "unbounded":
        return SimplexResult("unbounded", pivots=tab.pivots)

    values = [_ZERO] * n
    for r, b in enumerate(tab.basis):
        if b < n:
            values[b] = tab.rhs[r]
    objective = sum((c * x for c, x in zip(lp.objective, values)), _ZERO)
    secondary = sum((c * x for c, x in zip(lp.secondary or [], values)), _ZERO)
    return SimplexResult(
        status="optimal",
        values=tuple(values),
        objective=objective,
        secondary_objective=secondary,
        basis=tuple(tab.basis),
        pivots=tab.pivots,
    )
