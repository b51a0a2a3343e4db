"""Colored Petri nets with variable-inscribed arcs and multiset markings.

A marking assigns each place a multiset of colors and is interchangeable
with a multi-classification over places x colors.  Tokens of one color are
indistinguishable.  The optional one-per-type capacity mode (a global flag,
not a file directive) forbids more than one token of any color in a place;
a binding only counts as enabled when the marking it produces respects it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from itertools import product
from pathlib import Path

from .errors import DomainError, FormatError, ParseError, PreconditionError
from .multiclass import MultiClassification
from .multiset import Multiset

__all__ = [
    "Arc",
    "GuardClause",
    "Transition",
    "Net",
    "Marking",
    "Binding",
    "parse_net",
    "load_net",
    "enabled_bindings",
    "fire",
]

VAR = "var"
CONST = "const"
Atom = tuple[str, str]  # (VAR|CONST, name); repetition encodes multiplicity


@dataclass(frozen=True)
class Arc:
    place: str
    inscription: tuple[Atom, ...]


@dataclass(frozen=True)
class GuardClause:
    variable: str
    equal: bool
    color: str

    def holds(self, binding: "Binding") -> bool:
        return (binding[self.variable] == self.color) == self.equal


@dataclass(frozen=True)
class Transition:
    name: str
    inputs: tuple[Arc, ...] = ()
    outputs: tuple[Arc, ...] = ()
    guard: tuple[GuardClause, ...] = ()

    @property
    def variables(self) -> tuple[str, ...]:
        """Variables of the input inscriptions, sorted."""
        return tuple(sorted({name for arc in self.inputs
                             for kind, name in arc.inscription if kind == VAR}))


@dataclass(frozen=True)
class Binding:
    """An assignment of colors to a transition's input variables."""

    items: tuple[tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(sorted(self.items)))

    def __getitem__(self, variable: str) -> str:
        for var, color in self.items:
            if var == variable:
                return color
        raise DomainError(f"binding does not cover variable {variable!r}")

    def as_dict(self) -> dict[str, str]:
        return dict(self.items)

    def render(self) -> str:
        return "[" + ",".join(f"{v}={c}" for v, c in self.items) + "]"


@dataclass(frozen=True)
class Marking:
    """Per-place color multisets as a matrix of naturals."""

    places: tuple[str, ...]
    colors: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "places", tuple(self.places))
        object.__setattr__(self, "colors", tuple(self.colors))
        object.__setattr__(self, "counts", tuple(tuple(row) for row in self.counts))
        if len(self.counts) != len(self.places) or any(
                len(row) != len(self.colors) for row in self.counts):
            raise FormatError("marking matrix shape does not match places x colors")
        for row in self.counts:
            for v in row:
                if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                    raise FormatError(f"token counts must be naturals, got {v!r}")

    def place_multiset(self, place: str) -> Multiset:
        try:
            i = self.places.index(place)
        except ValueError:
            raise DomainError(f"unknown place {place!r}") from None
        return Multiset(dict(zip(self.colors, self.counts[i])), self.colors)

    def respects_capacity(self) -> bool:
        return all(v <= 1 for row in self.counts for v in row)

    def to_multiclassification(self) -> MultiClassification:
        return MultiClassification(self.places, self.colors, self.counts)

    @classmethod
    def from_multiclassification(cls, mc: MultiClassification) -> "Marking":
        return cls(mc.tokens, mc.types, mc.multiplicity)

    def render(self) -> str:
        parts = []
        for place, row in zip(self.places, self.counts):
            inner = ",".join(c if v == 1 else f"{v}*{c}"
                             for c, v in zip(self.colors, row) if v > 0)
            parts.append(f"{place}:{{{inner}}}")
        return " ".join(parts)


@dataclass(frozen=True)
class Net:
    places: tuple[str, ...]
    transitions: tuple[Transition, ...]
    colors: tuple[str, ...]
    initial_marking: Marking
    capacity_one: bool = False

    def __post_init__(self):
        object.__setattr__(self, "places", tuple(self.places))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        object.__setattr__(self, "colors", tuple(self.colors))
        if not self.places:
            raise FormatError("a net needs at least one place")
        if not self.colors:
            raise FormatError("a net needs at least one color")
        names = [t.name for t in self.transitions]
        if set(names) & set(self.places):
            raise FormatError("place and transition names must be disjoint")
        if len(set(names)) != len(names):
            raise FormatError("duplicate transition names")
        if (self.initial_marking.places != self.places
                or self.initial_marking.colors != self.colors):
            raise FormatError("initial marking does not match the net's places/colors")
        for t in self.transitions:
            bound = set(t.variables)
            for arc in t.inputs + t.outputs:
                if arc.place not in self.places:
                    raise FormatError(f"arc references unknown place {arc.place!r}")
            out_vars = {name for arc in t.outputs
                        for kind, name in arc.inscription if kind == VAR}
            if not out_vars <= bound:
                loose = ", ".join(sorted(out_vars - bound))
                raise FormatError(
                    f"transition {t.name!r} outputs unbound variables: {loose}")
            guard_vars = {g.variable for g in t.guard}
            if not guard_vars <= bound:
                loose = ", ".join(sorted(guard_vars - bound))
                raise FormatError(
                    f"transition {t.name!r} guards unbound variables: {loose}")
        if self.capacity_one and not self.initial_marking.respects_capacity():
            raise FormatError("initial marking violates the one-per-type capacity")

    def transition(self, name: str) -> Transition:
        for t in self.transitions:
            if t.name == name:
                return t
        raise DomainError(f"unknown transition {name!r}")

    def with_capacity_one(self, enabled: bool = True) -> "Net":
        return replace(self, capacity_one=enabled)


def _instantiate(inscription: tuple[Atom, ...], binding: Binding) -> Counter:
    bag: Counter = Counter()
    for kind, name in inscription:
        bag[name if kind == CONST else binding[name]] += 1
    return bag


def _consumed(t: Transition, binding: Binding) -> dict[str, Counter]:
    demand: dict[str, Counter] = {}
    for arc in t.inputs:
        demand.setdefault(arc.place, Counter()).update(_instantiate(arc.inscription, binding))
    return demand


def _produced(t: Transition, binding: Binding) -> dict[str, Counter]:
    supply: dict[str, Counter] = {}
    for arc in t.outputs:
        supply.setdefault(arc.place, Counter()).update(_instantiate(arc.inscription, binding))
    return supply


def _next_counts(net: Net, m: Marking, t: Transition,
                 binding: Binding) -> tuple[tuple[int, ...], ...] | None:
    """Post-firing count matrix, or None when inputs are insufficient."""
    demand = _consumed(t, binding)
    supply = _produced(t, binding)
    color_index = {c: j for j, c in enumerate(net.colors)}
    rows = [list(row) for row in m.counts]
    for i, place in enumerate(net.places):
        for color, k in demand.get(place, {}).items():
            j = color_index[color]
            if rows[i][j] < k:
                return None
            rows[i][j] -= k
        for color, k in supply.get(place, {}).items():
            rows[i][color_index[color]] += k
    return tuple(tuple(row) for row in rows)


def _binding_matches(t: Transition, binding: Binding) -> bool:
    return tuple(v for v, _ in binding.items) == t.variables


def enabled_bindings(net: Net, m: Marking, transition: str) -> list[Binding]:
    """All bindings under which the transition may fire at m.

    Canonical order: variables sorted, colors ranging in declaration order.
    In one-per-type mode a binding whose firing would put a second token of
    some color into a place is not enabled.
    """
    t = net.transition(transition)
    variables = t.variables
    out = []
    for combo in product(net.colors, repeat=len(variables)):
        binding = Binding(tuple(zip(variables, combo)))
        if not all(g.holds(binding) for g in t.guard):
            continue
        nxt = _next_counts(net, m, t, binding)
        if nxt is None:
            continue
        if net.capacity_one and any(v > 1 for row in nxt for v in row):
            continue
        out.append(binding)
    return out


def fire(net: Net, m: Marking, transition: str, binding: Binding) -> Marking:
    """The marking after firing; the binding must be enabled at m."""
    t = net.transition(transition)
    if not _binding_matches(t, binding):
        raise PreconditionError(
            f"binding {binding.render()} does not cover exactly the variables "
            f"of transition {t.name!r}")
    if not all(g.holds(binding) for g in t.guard):
        raise PreconditionError(
            f"guard of transition {t.name!r} rejects {binding.render()}")
    nxt = _next_counts(net, m, t, binding)
    if nxt is None:
        raise PreconditionError(
            f"transition {t.name!r} lacks input tokens for {binding.render()}")
    if net.capacity_one and any(v > 1 for row in nxt for v in row):
        raise PreconditionError(
            f"firing {t.name!r} with {binding.render()} violates the "
            "one-per-type capacity")
    return Marking(net.places, net.colors, nxt)


def _parse_atom(token: str, lineno: int) -> tuple[int, str]:
    """``name`` or ``k*name`` with k a positive count."""
    if "*" in token:
        head, _, name = token.partition("*")
        try:
            k = int(head)
        except ValueError:
            raise ParseError(f"bad multiplicity {head!r}", lineno) from None
        if k <= 0 or not name:
            raise ParseError(f"bad inscription atom {token!r}", lineno)
        return k, name
    return 1, token


def _parse_guard(text: str, lineno: int) -> tuple[GuardClause, ...]:
    clauses = []
    for chunk in text.split(","):
        parts = chunk.split()
        if len(parts) != 3 or parts[1] not in ("=", "!="):
            raise ParseError(f"bad guard clause {chunk.strip()!r}", lineno)
        var, op, color = parts
        clauses.append(GuardClause(var, op == "=", color))
    return tuple(clauses)


def parse_net(text: str) -> Net:
    """Parse the line-oriented net description.

    Directives: ``colors``, ``place NAME [init atoms]``,
    ``trans NAME [guard v = c, ...]`` followed by ``in PLACE : atoms`` /
    ``out PLACE : atoms`` lines.  ``#`` starts a comment.  The colors line
    must come first; multiplicities are written by repetition or ``k*name``.
    """
    colors: tuple[str, ...] | None = None
    places: list[str] = []
    init: dict[str, Counter] = {}
    transitions: list[dict] = []
    current: dict | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        directive = tokens[0]

        if directive == "colors":
            if colors is not None:
                raise ParseError("duplicate colors line", lineno)
            if len(tokens) < 2:
                raise ParseError("colors line names no colors", lineno)
            if len(set(tokens[1:])) != len(tokens[1:]):
                raise ParseError("duplicate color names", lineno)
            colors = tuple(tokens[1:])
            continue

        if colors is None:
            raise ParseError("colors must be declared first", lineno)

        if directive == "place":
            if len(tokens) < 2:
                raise ParseError("place line without a name", lineno)
            name = tokens[1]
            if name in places:
                raise ParseError(f"duplicate place {name!r}", lineno)
            rest = tokens[2:]
            bag: Counter = Counter()
            if rest:
                if rest[0] != "init":
                    raise ParseError(f"expected 'init', got {rest[0]!r}", lineno)
                for atom in rest[1:]:
                    k, color = _parse_atom(atom, lineno)
                    if color not in colors:
                        raise ParseError(f"unknown color {color!r}", lineno)
                    bag[color] += k
            places.append(name)
            init[name] = bag
            current = None
        elif directive == "trans":
            if len(tokens) < 2:
                raise ParseError("trans line without a name", lineno)
            name = tokens[1]
            if any(t["name"] == name for t in transitions):
                raise ParseError(f"duplicate transition {name!r}", lineno)
            guard: tuple[GuardClause, ...] = ()
            if len(tokens) > 2:
                if tokens[2] != "guard":
                    raise ParseError(f"expected 'guard', got {tokens[2]!r}", lineno)
                guard_text = line.split("guard", 1)[1]
                guard = _parse_guard(guard_text, lineno)
                for clause in guard:
                    if clause.color not in colors:
                        raise ParseError(f"unknown color {clause.color!r}", lineno)
            current = {"name": name, "guard": guard, "in": [], "out": [], "line": lineno}
            transitions.append(current)
        elif directive in ("in", "out"):
            if current is None:
                raise ParseError(f"{directive!r} line outside a transition", lineno)
            head, sep, tail = line.partition(":")
            head_tokens = head.split()
            if not sep or len(head_tokens) != 2:
                raise ParseError(f"expected '{directive} PLACE : atoms'", lineno)
            place = head_tokens[1]
            if place not in places:
                raise ParseError(f"unknown place {place!r}", lineno)
            inscription: list[Atom] = []
            for atom in tail.split():
                k, name = _parse_atom(atom, lineno)
                kind = CONST if name in colors else VAR
                inscription.extend([(kind, name)] * k)
            current[directive].append(Arc(place, tuple(inscription)))
        else:
            raise ParseError(f"unknown directive {directive!r}", lineno)

    if colors is None:
        raise ParseError("missing colors line", 1)
    if not places:
        raise ParseError("no places declared", 1)

    built = []
    for spec in transitions:
        t = Transition(spec["name"], tuple(spec["in"]), tuple(spec["out"]), spec["guard"])
        if spec["name"] in places:
            raise ParseError(f"name {spec['name']!r} used for both a place and "
                             "a transition", spec["line"])
        built.append(t)

    counts = tuple(tuple(init[p].get(c, 0) for c in colors) for p in places)
    marking = Marking(tuple(places), colors, counts)
    try:
        return Net(tuple(places), tuple(built), colors, marking)
    except FormatError as exc:
        raise ParseError(str(exc)) from None


def load_net(path: str | Path) -> Net:
    return parse_net(Path(path).read_text(encoding="utf-8"))
