"""
CNF formulas in DIMACS form.

Variable v (1-based) lives on qubit v - 1, so in a basis index it is bit
n - v counting from the least significant end.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DimacsError

logger = logging.getLogger(__name__)

BRUTE_FORCE_VARS = 24


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        clauses = tuple(tuple(int(l) for l in clause) for clause in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.num_vars < 1:
            raise ValueError("a formula needs at least one variable")
        for index, clause in enumerate(clauses, start=1):
            if not clause:
                raise ValueError(f"clause {index} is empty")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"clause {index} literal {lit} outside 1..{self.num_vars}")

    @property
    def n(self) -> int:
        return self.num_vars

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @property
    def width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    def occurrences(self, var: int) -> int:
        return sum(1 for clause in self.clauses for l in clause if abs(l) == var)

    def value_of(self, assignment: int, var: int) -> int:
        return (assignment >> (self.num_vars - var)) & 1

    def satisfied_by(self, assignment: int) -> bool:
        return all(
            any(self.value_of(assignment, abs(l)) == (1 if l > 0 else 0) for l in clause)
            for clause in self.clauses
        )

    def satisfied_mask(self) -> np.ndarray:
        if self.num_vars > BRUTE_FORCE_VARS:
            raise ValueError(f"brute force limited to {BRUTE_FORCE_VARS} variables")
        index = np.arange(2**self.num_vars, dtype=np.int64)
        ok = np.ones(index.size, dtype=bool)
        for clause in self.clauses:
            any_true = np.zeros(index.size, dtype=bool)
            for lit in clause:
                bit = ((index >> (self.num_vars - abs(lit))) & 1).astype(bool)
                any_true |= bit if lit > 0 else ~bit
            ok &= any_true
        return ok

    def models(self) -> List[int]:
        return np.flatnonzero(self.satisfied_mask()).tolist()

    def assignment_string(self, assignment: int) -> str:
        return format(assignment, f"0{self.num_vars}b")


# ----------------------------------------------------------------------
# PARSE / WRITE
# ----------------------------------------------------------------------

def parse_dimacs(text: str) -> CnfFormula:
    header: Optional[Tuple[int, int]] = None
    clauses: List[Tuple[int, ...]] = []
    current: List[int] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise DimacsError("second problem line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed problem line {line!r}, expected 'p cnf <vars> <clauses>'", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError(f"non-integer counts in problem line {line!r}", lineno) from None
            if header[0] < 1 or header[1] < 0:
                raise DimacsError("problem line counts out of range", lineno)
            continue
        if header is None:
            raise DimacsError("clause before the 'p cnf' problem line", lineno)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsError(f"bad literal {token!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise DimacsError("empty clause", lineno)
                clauses.append(tuple(current))
                current = []
                continue
            if abs(lit) > header[0]:
                raise DimacsError(f"literal {lit} references a variable beyond {header[0]}", lineno)
            current.append(lit)
        last_line = lineno
    if header is None:
        raise DimacsError("missing 'p cnf' problem line")
    if current:
        raise DimacsError("last clause is not terminated by 0", last_line)
    if len(clauses) != header[1]:
        raise DimacsError(f"problem line declares {header[1]} clauses, found {len(clauses)}")
    formula = CnfFormula(header[0], tuple(clauses))
    logger.debug("parsed CNF: %d vars, %d clauses, width %d", formula.n, formula.num_clauses, formula.width)
    return formula


def to_dimacs(formula: CnfFormula, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {formula.num_vars} {formula.num_clauses}")
    lines += [" ".join(str(l) for l in clause) + " 0" for clause in formula.clauses]
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# RANDOM UNIQUE INSTANCES
# ----------------------------------------------------------------------

def _clause_mask(n: int, clause: Sequence[int]) -> np.ndarray:
    return CnfFormula(n, (tuple(clause),)).satisfied_mask()


def random_unique_formula(
    n: int,
    rng: np.random.Generator,
    max_clauses: Optional[int] = None,
    max_width: int = 3,
    attempts: int = 200,
    candidates: int = 8,
) -> Tuple[CnfFormula, int]:
    """
    (formula, model): a formula whose only model is a planted assignment.

    Each step picks a surviving non-model y and adds the candidate clause that
    keeps the planted model, is false on y, and removes the most survivors.
    Unit clauses are forced while the survivors outnumber what the remaining
    clause budget could still halve away.
    """
    if not 1 <= n <= BRUTE_FORCE_VARS:
        raise ValueError(f"n must be in 1..{BRUTE_FORCE_VARS}")
    if max_width < 1:
        raise ValueError("max_width must be positive")
    budget = 2 * n + 2 if max_clauses is None else max_clauses
    for _ in range(attempts):
        planted = int(rng.integers(0, 2**n))
        bits = [(planted >> (n - v)) & 1 for v in range(1, n + 1)]
        alive = np.ones(2**n, dtype=bool)
        clauses: List[Tuple[int, ...]] = []
        while alive.sum() > 1 and len(clauses) < budget:
            others = np.flatnonzero(alive)
            others = others[others != planted]
            y = int(others[rng.integers(0, others.size)])
            differ = [v for v in range(1, n + 1) if ((y >> (n - v)) & 1) != bits[v - 1]]
            left = budget - len(clauses)
            forced_unit = alive.sum() - 1 > 2 ** (left - 1)
            width = 1 if forced_unit else int(rng.integers(1, max_width + 1))
            best, best_kill = None, -1
            for _ in range(candidates):
                anchor = int(differ[rng.integers(0, len(differ))])
                pool = [v for v in range(1, n + 1) if v != anchor]
                extra = rng.permutation(pool)[: max(0, min(width, n) - 1)]
                clause = [anchor if bits[anchor - 1] else -anchor]
                # extra literals are false on y
                clause += [int(-v) if (y >> (n - v)) & 1 else int(v) for v in extra]
                kill = int((alive & ~_clause_mask(n, clause)).sum())
                if kill > best_kill:
                    best, best_kill = tuple(sorted(clause, key=abs)), kill
            clauses.append(best)
            alive &= _clause_mask(n, best)
        if alive.sum() == 1:
            formula = CnfFormula(n, tuple(clauses))
            logger.debug("random unique formula: n=%d c=%d W=%d", n, formula.num_clauses, formula.width)
            return formula, planted
    raise ValueError(f"no unique formula within {budget} clauses after {attempts} attempts")
