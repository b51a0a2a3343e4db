"""Binary classifications, sequents, constraints, and infomorphisms.

A classification relates a finite token set to a finite type set through a
boolean incidence matrix.  A sequent <gamma, delta> is satisfied by a token
when carrying every type of gamma forces carrying some type of delta; a
sequent every token satisfies is a constraint, and the constraints form the
classification's theory.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .errors import DomainError, FormatError

__all__ = [
    "Classification",
    "Sequent",
    "BinaryRelation",
    "Infomorphism",
    "compose_relations",
    "verify_infomorphism",
    "composed_incidence",
    "composed_incidence_included",
]


def _check_identifiers(kind: str, ids: tuple[str, ...]) -> None:
    if not ids:
        raise FormatError(f"{kind} list must be non-empty")
    if len(set(ids)) != len(ids):
        dupes = sorted({x for x in ids if ids.count(x) > 1})
        raise FormatError(f"duplicate {kind} identifiers: {', '.join(dupes)}")


@dataclass(frozen=True)
class Sequent:
    """A pair of type sets; both sides are stored as frozensets."""

    gamma: frozenset[str]
    delta: frozenset[str]

    def __init__(self, gamma: Iterable[str] = (), delta: Iterable[str] = ()):
        object.__setattr__(self, "gamma", frozenset(gamma))
        object.__setattr__(self, "delta", frozenset(delta))

    def leq(self, other: "Sequent") -> bool:
        """Componentwise subset order on sequents."""
        return self.gamma <= other.gamma and self.delta <= other.delta

    def __repr__(self) -> str:
        g = ",".join(sorted(self.gamma))
        d = ",".join(sorted(self.delta))
        return f"<{{{g}}},{{{d}}}>"


def sequent_leq(s1: Sequent, s2: Sequent) -> bool:
    return s1.leq(s2)


@dataclass(frozen=True)
class Classification:
    """Tokens, types, and a boolean is-of-type incidence matrix.

    ``incidence[i][j]`` is True iff token ``tokens[i]`` is of type
    ``types[j]``.  Token and type lists are non-empty and duplicate-free.
    """

    tokens: tuple[str, ...]
    types: tuple[str, ...]
    incidence: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "types", tuple(self.types))
        object.__setattr__(
            self, "incidence",
            tuple(tuple(bool(v) for v in row) for row in self.incidence))
        _check_identifiers("token", self.tokens)
        _check_identifiers("type", self.types)
        if len(self.incidence) != len(self.tokens) or any(
                len(row) != len(self.types) for row in self.incidence):
            raise FormatError(
                f"incidence must be {len(self.tokens)}x{len(self.types)}")

    @classmethod
    def from_pairs(cls, tokens: Iterable[str], types: Iterable[str],
                   pairs: Iterable[tuple[str, str]]) -> "Classification":
        tokens = tuple(tokens)
        types = tuple(types)
        pair_set = set(pairs)
        for a, t in pair_set:
            if a not in tokens:
                raise DomainError(f"unknown token {a!r} in incidence pairs")
            if t not in types:
                raise DomainError(f"unknown type {t!r} in incidence pairs")
        rows = tuple(tuple((a, t) in pair_set for t in types) for a in tokens)
        return cls(tokens, types, rows)

    def _token_index(self, a: str) -> int:
        try:
            return self.tokens.index(a)
        except ValueError:
            raise DomainError(f"unknown token {a!r}") from None

    def _require_types(self, names: Iterable[str]) -> None:
        unknown = sorted(set(names) - set(self.types))
        if unknown:
            raise DomainError(f"unknown types: {', '.join(unknown)}")

    def holds(self, a: str, alpha: str) -> bool:
        self._require_types([alpha])
        return self.incidence[self._token_index(a)][self.types.index(alpha)]

    def token_types(self, a: str) -> frozenset[str]:
        """All types the token carries (the token's row as a set)."""
        row = self.incidence[self._token_index(a)]
        return frozenset(t for t, v in zip(self.types, row) if v)

    def meet(self, gamma: Iterable[str]) -> frozenset[str]:
        """Tokens of every type in gamma; the empty gamma yields all tokens."""
        gamma = set(gamma)
        self._require_types(gamma)
        return frozenset(a for a in self.tokens
                         if gamma <= self.token_types(a))

    def join(self, delta: Iterable[str]) -> frozenset[str]:
        """Tokens of at least one type in delta; the empty delta yields none."""
        delta = set(delta)
        self._require_types(delta)
        return frozenset(a for a in self.tokens
                         if delta & self.token_types(a))

    def satisfies(self, a: str, s: Sequent) -> bool:
        self._require_types(s.gamma | s.delta)
        row = self.token_types(a)
        return not (s.gamma <= row) or bool(s.delta & row)

    def all_tokens_satisfy(self, s: Sequent) -> bool:
        """Constraint check by the defining quantification over tokens."""
        return all(self.satisfies(a, s) for a in self.tokens)

    def is_constraint(self, s: Sequent) -> bool:
        """Constraint check by the meet/join inclusion criterion."""
        self._require_types(s.gamma | s.delta)
        return self.meet(s.gamma) <= self.join(s.delta)

    def theory(self, max_side: int) -> list[Sequent]:
        """All constraints with both sides of size <= max_side.

        Brute force over type subsets; the result is in canonical order
        (lexicographic by sorted gamma, then sorted delta).  ``max_side``
        larger than the type count is clamped.
        """
        limit = min(max_side, len(self.types))
        names = sorted(self.types)
        sides = [combo for size in range(limit + 1)
                 for combo in combinations(names, size)]
        found = []
        for g in sides:
            for d in sides:
                s = Sequent(g, d)
                if self.is_constraint(s):
                    found.append(s)
        found.sort(key=lambda s: (tuple(sorted(s.gamma)), tuple(sorted(s.delta))))
        return found


@dataclass(frozen=True)
class BinaryRelation:
    """A relation between two ordered identifier domains."""

    left: tuple[str, ...]
    right: tuple[str, ...]
    pairs: frozenset[tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        left, right = set(self.left), set(self.right)
        for a, b in self.pairs:
            if a not in left or b not in right:
                raise DomainError(f"pair ({a!r}, {b!r}) outside the declared domains")

    def includes(self, other: "BinaryRelation") -> bool:
        return other.pairs <= self.pairs


def compose_relations(r: BinaryRelation, s: BinaryRelation) -> BinaryRelation:
    """Relational composition with ``r`` applied first: pairs (a, c) such
    that some b links (a, b) in r and (b, c) in s."""
    if r.right != s.left:
        raise DomainError("composition requires r's right domain to equal s's left domain")
    by_mid: dict[str, set[str]] = {}
    for b, c in s.pairs:
        by_mid.setdefault(b, set()).add(c)
    pairs = {(a, c) for a, b in r.pairs for c in by_mid.get(b, ())}
    return BinaryRelation(r.left, s.right, frozenset(pairs))


@dataclass(frozen=True)
class Infomorphism:
    """A contravariant map pair between two classifications.

    ``type_map`` sends every source type forward; ``token_map`` sends every
    target token backward.  Construction checks totality only; whether the
    defining biconditional holds is a separate verification so that
    counterexamples remain constructible.
    """

    source: Classification
    target: Classification
    type_map: Mapping[str, str]
    token_map: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "type_map", dict(self.type_map))
        object.__setattr__(self, "token_map", dict(self.token_map))
        missing = set(self.source.types) - set(self.type_map)
        if missing:
            raise DomainError(f"type_map misses source types: {', '.join(sorted(missing))}")
        missing = set(self.target.tokens) - set(self.token_map)
        if missing:
            raise DomainError(f"token_map misses target tokens: {', '.join(sorted(missing))}")
        for alpha, image in self.type_map.items():
            if alpha not in self.source.types:
                raise DomainError(f"type_map key {alpha!r} is not a source type")
            if image not in self.target.types:
                raise DomainError(f"type_map image {image!r} is not a target type")
        for c, image in self.token_map.items():
            if c not in self.target.tokens:
                raise DomainError(f"token_map key {c!r} is not a target token")
            if image not in self.source.tokens:
                raise DomainError(f"token_map image {image!r} is not a source token")


def verify_infomorphism(f: Infomorphism) -> bool:
    """Exhaustively check the biconditional: the pulled-back token carries a
    source type iff the target token carries the pushed-forward type."""
    return all(
        f.source.holds(f.token_map[c], alpha) == f.target.holds(c, f.type_map[alpha])
        for c in f.target.tokens for alpha in f.source.types)


def composed_incidence(f: Infomorphism) -> BinaryRelation:
    """The source incidence transported through the maps: all pairs
    (c, type_map(alpha)) with token_map(c) carrying alpha in the source."""
    pairs = {
        (c, f.type_map[alpha])
        for c in f.target.tokens for alpha in f.source.types
        if f.source.holds(f.token_map[c], alpha)}
    return BinaryRelation(f.target.tokens, f.target.types, frozenset(pairs))


def composed_incidence_included(f: Infomorphism) -> bool:
    """Whether the transported incidence sits inside the target incidence.

    True for every verified infomorphism; may be False for raw map pairs.
    """
    target_rel = BinaryRelation(
        f.target.tokens, f.target.types,
        frozenset((c, t) for c in f.target.tokens for t in f.target.types
                  if f.target.holds(c, t)))
    return target_rel.includes(composed_incidence(f))
