"""Truth tables and exact two-level minimization.

``minimize`` computes prime implicants by iterative cube merging and picks a
minimum sum-of-products cover: essential primes first, then a Petrick-style
exact search on the residue.  Ties between minimum covers are broken by
fewer total literals, then by the lexicographically smallest rendering, so
identical tables always minimize to byte-identical formulas.  Above
GREEDY_VARIABLE_LIMIT variables the residue is covered greedily instead
(logged; the result stays exact but may not be term-count minimal).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import chain
from typing import Iterable, Mapping, Sequence

from .classification import Classification
from .errors import DomainError, FormatError, ResourceError

__all__ = [
    "TruthTable",
    "DnfFormula",
    "table_from_classification",
    "minimize",
    "evaluate",
    "semantically_equal",
    "exactly_covers",
    "GREEDY_VARIABLE_LIMIT",
    "EQUALITY_VARIABLE_LIMIT",
]

log = logging.getLogger(__name__)

# Petrick's exact cover search is used up to this many variables
GREEDY_VARIABLE_LIMIT = 20
# brute-force semantic equality enumerates 2^n assignments up to this n
EQUALITY_VARIABLE_LIMIT = 24

Row = tuple[int, ...]
Literal = tuple[str, bool]
Cube = tuple[int, int]  # (value bits, care mask); value is a subset of care


@dataclass(frozen=True)
class TruthTable:
    """Variables plus the rows that must be true and may-be-anything rows."""

    variables: tuple[str, ...]
    minterms: frozenset[Row]
    dontcares: frozenset[Row] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "minterms",
                           frozenset(tuple(int(v) for v in r) for r in self.minterms))
        object.__setattr__(self, "dontcares",
                           frozenset(tuple(int(v) for v in r) for r in self.dontcares))
        if len(set(self.variables)) != len(self.variables):
            raise FormatError("duplicate variable names")
        n = len(self.variables)
        for row in chain(self.minterms, self.dontcares):
            if len(row) != n:
                raise FormatError(f"row {row} does not have {n} entries")
            if any(v not in (0, 1) for v in row):
                raise FormatError(f"row {row} has non-boolean entries")
        if self.minterms & self.dontcares:
            raise FormatError("minterms and dontcares overlap")


@dataclass(frozen=True)
class DnfFormula:
    """A sum of products over named variables.

    Terms are tuples of (variable, positive?) literals.  The constant-false
    formula has no terms; a tautology is the single empty term.  Literals
    within a term follow variable order and terms are kept in canonical
    order, so equal formulas render identically.
    """

    variables: tuple[str, ...]
    terms: tuple[tuple[Literal, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        index = {v: i for i, v in enumerate(self.variables)}
        if len(index) != len(self.variables):
            raise FormatError("duplicate variable names")
        normalized = set()
        for term in self.terms:
            seen = set()
            for var, _ in term:
                if var not in index:
                    raise DomainError(f"literal variable {var!r} not among formula variables")
                if var in seen:
                    raise FormatError(f"variable {var!r} occurs twice in one term")
                seen.add(var)
            normalized.add(tuple(sorted(((v, bool(p)) for v, p in term),
                                        key=lambda lit: index[lit[0]])))
        ordered = sorted(normalized,
                         key=lambda t: tuple((index[v], p) for v, p in t))
        object.__setattr__(self, "terms", tuple(ordered))

    @property
    def term_variables(self) -> frozenset[str]:
        return frozenset(v for term in self.terms for v, _ in term)

    def render(self) -> str:
        """``(~alpha & beta) | (alpha & ~beta & delta)``; 0 / 1 constants."""
        if not self.terms:
            return "0"
        if self.terms == ((),):
            return "1"
        parts = [" & ".join(f"{'' if pos else '~'}{v}" for v, pos in term)
                 for term in self.terms]
        if len(parts) == 1:
            return parts[0]
        return " | ".join(f"({p})" for p in parts)

    def __repr__(self) -> str:
        return f"DnfFormula({self.render()})"


def table_from_classification(c: Classification) -> TruthTable:
    """Truth table whose minterms are the classification's distinct rows."""
    rows = frozenset(tuple(int(v) for v in row) for row in c.incidence)
    return TruthTable(c.types, rows)


def _row_index(row: Row) -> int:
    idx = 0
    for v in row:
        idx = (idx << 1) | v
    return idx


def _cube_covers(cube: Cube, m: int) -> bool:
    value, care = cube
    return (m & care) == value


def _prime_implicants(n: int, rows: Sequence[int]) -> set[Cube]:
    """Iteratively merge adjacent cubes; cubes never merged are prime."""
    full = (1 << n) - 1
    current: set[Cube] = {(r, full) for r in rows}
    primes: set[Cube] = set()
    while current:
        by_care: dict[int, set[int]] = {}
        for value, care in current:
            by_care.setdefault(care, set()).add(value)
        merged: set[Cube] = set()
        nxt: set[Cube] = set()
        for care, values in by_care.items():
            bits = [1 << b for b in range(n) if care & (1 << b)]
            for value in values:
                for bit in bits:
                    if value & bit:
                        continue  # each pair handled from its 0 side
                    if (value | bit) in values:
                        nxt.add((value, care & ~bit))
                        merged.add((value, care))
                        merged.add((value | bit, care))
        primes |= current - merged
        current = nxt
    return primes


def _cube_term(cube: Cube, variables: tuple[str, ...]) -> tuple[Literal, ...]:
    value, care = cube
    n = len(variables)
    return tuple((variables[i], bool(value & (1 << (n - 1 - i))))
                 for i in range(n) if care & (1 << (n - 1 - i)))


def _absorb(selections: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    """Drop every selection that is a proper superset of another."""
    kept: list[frozenset[int]] = []
    for s in sorted(set(selections), key=lambda s: (len(s), sorted(s))):
        if not any(k <= s for k in kept):
            kept.append(s)
    return kept


def _petrick(cover_sets: Sequence[frozenset[int]]) -> list[frozenset[int]]:
    """All irredundant selections covering every set (product of sums with
    absorption)."""
    product: list[frozenset[int]] = [frozenset()]
    for s in sorted(cover_sets, key=lambda s: (len(s), sorted(s))):
        product = _absorb(p | {i} for p in product for i in s)
    return product


def _greedy_cover(cover_sets: list[frozenset[int]]) -> frozenset[int]:
    chosen: set[int] = set()
    remaining = list(cover_sets)
    while remaining:
        counts: dict[int, int] = {}
        for s in remaining:
            for i in s:
                counts[i] = counts.get(i, 0) + 1
        best = min(counts, key=lambda i: (-counts[i], i))
        chosen.add(best)
        remaining = [s for s in remaining if best not in s]
    return frozenset(chosen)


def minimize(t: TruthTable) -> DnfFormula:
    """Minimal sum-of-products exactly matching the table.

    The result is true on every minterm and false on every row outside
    minterms and dontcares.  An empty minterm set yields the constant-false
    formula.
    """
    n = len(t.variables)
    on = sorted(_row_index(r) for r in t.minterms)
    if not on:
        return DnfFormula(t.variables, ())
    care_rows = on + sorted(_row_index(r) for r in t.dontcares)
    primes = _prime_implicants(n, care_rows)
    useful = [p for p in primes if any(_cube_covers(p, m) for m in on)]
    useful.sort(key=lambda c: tuple(
        (v, pol) for v, pol in _cube_term(c, t.variables)))

    cover_sets = [frozenset(i for i, p in enumerate(useful) if _cube_covers(p, m))
                  for m in on]

    # essential primes: any minterm covered by exactly one prime forces it
    chosen: set[int] = set()
    remaining = cover_sets
    while True:
        forced = {next(iter(s)) for s in remaining if len(s) == 1}
        forced -= chosen
        if not forced:
            break
        chosen |= forced
        remaining = [s for s in remaining if not (s & chosen)]

    if not remaining:
        candidates = [frozenset(chosen)]
    elif n > GREEDY_VARIABLE_LIMIT:
        log.warning(
            "greedy cover over %d variables; result is exact but may not be minimal", n)
        candidates = [frozenset(chosen) | _greedy_cover(remaining)]
    else:
        candidates = [frozenset(chosen) | extra for extra in _petrick(remaining)]

    best: DnfFormula | None = None
    best_key = None
    for selection in candidates:
        formula = DnfFormula(
            t.variables, tuple(_cube_term(useful[i], t.variables)
                               for i in sorted(selection)))
        key = (len(formula.terms),
               sum(len(term) for term in formula.terms),
               formula.render())
        if best_key is None or key < best_key:
            best, best_key = formula, key
    assert best is not None
    return best


def evaluate(f: DnfFormula, assignment: Mapping[str, object]) -> bool:
    """Standard DNF evaluation; every variable appearing in f must be bound."""
    missing = sorted(f.term_variables - set(assignment))
    if missing:
        raise DomainError(f"assignment misses variables: {', '.join(missing)}")
    return any(all(bool(assignment[v]) == pos for v, pos in term)
               for term in f.terms)


def _variable_vector(i: int, n: int) -> int:
    """Truth vector of variable i over all 2^n assignments (bit j of the
    result is the variable's value under assignment index j)."""
    p = n - 1 - i
    half = 1 << p
    vec = ((1 << half) - 1) << half
    width = half << 1
    size = 1 << n
    while width < size:
        vec |= vec << width
        width <<= 1
    return vec


def truth_vector(f: DnfFormula, variables: Sequence[str]) -> int:
    """Bit j is f's value under the assignment encoded by j (first variable
    is the highest bit of j)."""
    variables = tuple(variables)
    index = {v: i for i, v in enumerate(variables)}
    unknown = sorted(f.term_variables - set(index))
    if unknown:
        raise DomainError(f"formula variables outside the given list: {', '.join(unknown)}")
    n = len(variables)
    mask = (1 << (1 << n)) - 1
    out = 0
    for term in f.terms:
        acc = mask
        for v, pos in term:
            vec = _variable_vector(index[v], n)
            acc &= vec if pos else (~vec & mask)
        out |= acc
    return out


def semantically_equal(f1: DnfFormula, f2: DnfFormula,
                       variables: Sequence[str]) -> bool:
    """Agreement on all assignments over the given variable list."""
    variables = tuple(variables)
    if len(variables) > EQUALITY_VARIABLE_LIMIT:
        raise ResourceError(
            f"semantic comparison over {len(variables)} variables exceeds "
            f"the {EQUALITY_VARIABLE_LIMIT}-variable budget")
    return truth_vector(f1, variables) == truth_vector(f2, variables)


def exactly_covers(f: DnfFormula, t: TruthTable) -> bool:
    """True iff f is true on every minterm of t and false on every row
    outside minterms and dontcares."""
    n = len(t.variables)
    if n > EQUALITY_VARIABLE_LIMIT:
        raise ResourceError(
            f"exactness check over {n} variables exceeds "
            f"the {EQUALITY_VARIABLE_LIMIT}-variable budget")
    vec = truth_vector(f, t.variables)
    on = 0
    for row in t.minterms:
        on |= 1 << _vector_bit(row)
    dc = 0
    for row in t.dontcares:
        dc |= 1 << _vector_bit(row)
    full = (1 << (1 << n)) - 1
    off = full & ~(on | dc)
    return (on & ~vec) == 0 and (vec & off) == 0


def _vector_bit(row: Row) -> int:
    """Assignment index of a row under the truth-vector bit convention."""
    return _row_index(row)
