"""Finite multisets over identifier domains.

Counts are unbounded naturals.  Equality and hashing ignore zero-count
padding, so ``{a, 0*b}`` equals ``{a}``; the declared domain only fixes
rendering order.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import FormatError


class Multiset:
    """An immutable multiset: a domain plus a multiplicity for each element."""

    __slots__ = ("_domain", "_counts")

    def __init__(self, counts: Mapping[str, int] | None = None,
                 domain: Iterable[str] = ()):
        merged: dict[str, int] = {d: 0 for d in domain}
        for key, value in (counts or {}).items():
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise FormatError(f"multiplicity of {key!r} must be a natural, got {value!r}")
            merged[key] = value
        self._domain: tuple[str, ...] = tuple(merged)
        self._counts: dict[str, int] = merged

    @classmethod
    def empty(cls, domain: Iterable[str] = ()) -> "Multiset":
        return cls({}, domain)

    @property
    def domain(self) -> tuple[str, ...]:
        return self._domain

    def count(self, x: str) -> int:
        # elements outside the domain implicitly have multiplicity 0
        return self._counts.get(x, 0)

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(d for d in self._domain if self._counts[d] > 0)

    def is_empty(self) -> bool:
        return all(v == 0 for v in self._counts.values())

    def _united_domain(self, other: "Multiset") -> tuple[str, ...]:
        extra = tuple(d for d in other._domain if d not in self._counts)
        return self._domain + extra

    def union(self, other: "Multiset") -> "Multiset":
        dom = self._united_domain(other)
        return Multiset({d: max(self.count(d), other.count(d)) for d in dom}, dom)

    def intersection(self, other: "Multiset") -> "Multiset":
        dom = self._united_domain(other)
        return Multiset({d: min(self.count(d), other.count(d)) for d in dom}, dom)

    def leq(self, other: "Multiset") -> bool:
        return all(self.count(d) <= other.count(d) for d in self._united_domain(other))

    def items(self) -> tuple[tuple[str, int], ...]:
        """Non-zero (element, multiplicity) pairs in domain order."""
        return tuple((d, c) for d, c in self._counts.items() if c > 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return dict(self.items()) == dict(other.items())

    def __hash__(self) -> int:
        return hash(frozenset(self.items()))

    def __bool__(self) -> bool:
        return not self.is_empty()

    def render(self, compact: bool = False) -> str:
        """``{3*alpha, 2*beta, gamma}``; multiplicity-1 prefixes are omitted."""
        parts = [name if c == 1 else f"{c}*{name}" for name, c in self.items()]
        sep = "," if compact else ", "
        return "{" + sep.join(parts) + "}"

    def __repr__(self) -> str:
        return f"Multiset({self.render()})"
