"""Multi-classifications: incidence valued in the naturals.

Token rows and type columns are multisets; sequents carry multisets on both
sides.  A multi-classification unfolds into a binary classification by
duplicating each type up to its maximum multiplicity with thermometer fill,
which is how theories are extracted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .classification import Classification, _check_identifiers
from .errors import DomainError, FormatError
from .multiset import Multiset

__all__ = ["MultiClassification", "MultiSequent", "COPY_SEP"]

# separator between an original type name and its copy index in unfoldings
COPY_SEP = "#"


@dataclass(frozen=True)
class MultiSequent:
    """A sequent whose sides are multisets over the type domain."""

    gamma: Multiset
    delta: Multiset


@dataclass(frozen=True)
class MultiClassification:
    """Tokens, types, and a natural-valued multiplicity matrix."""

    tokens: tuple[str, ...]
    types: tuple[str, ...]
    multiplicity: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "types", tuple(self.types))
        object.__setattr__(self, "multiplicity",
                           tuple(tuple(row) for row in self.multiplicity))
        _check_identifiers("token", self.tokens)
        _check_identifiers("type", self.types)
        if len(self.multiplicity) != len(self.tokens) or any(
                len(row) != len(self.types) for row in self.multiplicity):
            raise FormatError(
                f"multiplicity must be {len(self.tokens)}x{len(self.types)}")
        for row in self.multiplicity:
            for v in row:
                if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                    raise FormatError(f"multiplicities must be naturals, got {v!r}")

    def _token_index(self, a: str) -> int:
        try:
            return self.tokens.index(a)
        except ValueError:
            raise DomainError(f"unknown token {a!r}") from None

    def _require_types(self, names: Iterable[str]) -> None:
        unknown = sorted(set(names) - set(self.types))
        if unknown:
            raise DomainError(f"unknown types: {', '.join(unknown)}")

    def count(self, a: str, alpha: str) -> int:
        self._require_types([alpha])
        return self.multiplicity[self._token_index(a)][self.types.index(alpha)]

    def token_row(self, a: str) -> Multiset:
        """The token's row as a multiset over types."""
        row = self.multiplicity[self._token_index(a)]
        return Multiset(dict(zip(self.types, row)), self.types)

    def type_column(self, alpha: str) -> Multiset:
        """The type's column as a multiset over tokens."""
        self._require_types([alpha])
        j = self.types.index(alpha)
        return Multiset({a: self.multiplicity[i][j]
                         for i, a in enumerate(self.tokens)}, self.tokens)

    def big_join(self, gamma: Multiset) -> Multiset:
        """Per token, the max over gamma's support of gamma(alpha) times the
        token's multiplicity at alpha; the empty gamma yields the empty
        multiset."""
        self._require_types(gamma.support)
        out = {}
        for i, a in enumerate(self.tokens):
            scaled = [gamma.count(t) * self.multiplicity[i][self.types.index(t)]
                      for t in gamma.support]
            out[a] = max(scaled, default=0)
        return Multiset(out, self.tokens)

    def big_meet(self, gamma: Multiset) -> Multiset:
        """Pointwise-minimum analogue of big_join.  The empty gamma has no
        minimum convention and is rejected."""
        self._require_types(gamma.support)
        if gamma.is_empty():
            raise DomainError("big_meet of the empty multiset is undefined")
        out = {}
        for i, a in enumerate(self.tokens):
            out[a] = min(gamma.count(t) * self.multiplicity[i][self.types.index(t)]
                         for t in gamma.support)
        return Multiset(out, self.tokens)

    def satisfies(self, a: str, s: MultiSequent) -> bool:
        self._require_types(s.gamma.support)
        self._require_types(s.delta.support)
        row = self.token_row(a)
        return not s.gamma.leq(row) or not row.intersection(s.delta).is_empty()

    def is_constraint(self, s: MultiSequent) -> bool:
        return all(self.satisfies(a, s) for a in self.tokens)

    @property
    def is_binary(self) -> bool:
        return all(v <= 1 for row in self.multiplicity for v in row)

    def to_classification(self) -> Classification:
        """Lossless embedding of a {0,1}-valued multi-classification."""
        if not self.is_binary:
            raise FormatError("multiplicities exceed 1; not a binary classification")
        return Classification(
            self.tokens, self.types,
            tuple(tuple(v == 1 for v in row) for row in self.multiplicity))

    @classmethod
    def from_classification(cls, c: Classification) -> "MultiClassification":
        return cls(c.tokens, c.types,
                   tuple(tuple(int(v) for v in row) for row in c.incidence))

    def unfold(self) -> Classification:
        """Binary classification with each type duplicated up to its maximum
        multiplicity.

        Copies of type t are named ``t#1 .. t#k`` in original type order; a
        token with multiplicity m gets ones in copies 1..m and zeros after
        (thermometer fill).  Types whose column is all zero are dropped.
        """
        col_max = [max(row[j] for row in self.multiplicity)
                   for j in range(len(self.types))]
        if not any(col_max):
            raise FormatError("unfolding dropped every type (all multiplicities zero)")
        copy_names = tuple(
            f"{t}{COPY_SEP}{i}"
            for t, k in zip(self.types, col_max) if k > 0
            for i in range(1, k + 1))
        rows = []
        for row in self.multiplicity:
            bits: list[bool] = []
            for j, k in enumerate(col_max):
                bits.extend(i < row[j] for i in range(k))
            rows.append(tuple(bits))
        return Classification(self.tokens, copy_names, tuple(rows))
