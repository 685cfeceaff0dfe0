"""Immutable ontology model: named concepts, subclass edges, object properties.

An :class:`Ontology` is a plain value object.  Construction normalizes and
validates it: every name referenced by an edge or property is registered as
a concept, self-edges are rejected, and the subclass graph must be acyclic.
Instances are safe to share between threads.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .errors import CycleError

# Concept identity is the local name (the fragment after '#' in RDF ids).
ConceptId = str

Edge = tuple[ConceptId, ConceptId]


@dataclass(frozen=True)
class ObjectProperty:
    """A non-taxonomic relation between concepts (owl:ObjectProperty)."""

    name: str
    domain: frozenset[ConceptId] = frozenset()
    range: frozenset[ConceptId] = frozenset()
    inverse_of: str | None = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("object property name must be non-empty")
        object.__setattr__(self, "domain", frozenset(self.domain))
        object.__setattr__(self, "range", frozenset(self.range))


@dataclass(frozen=True)
class ParseReport:
    """What the parser dropped, invented, or merged while reading a file.

    All entries are human-readable strings in document order, except
    ``auto_registered`` which is sorted.  An empty report means the input
    used only the supported constructs and declared every name it uses.
    """

    discarded: tuple[str, ...] = ()
    auto_registered: tuple[ConceptId, ...] = ()
    merge_warnings: tuple[str, ...] = ()
    ignored: tuple[str, ...] = ()

    def is_empty(self) -> bool:
        return not (self.discarded or self.auto_registered or self.merge_warnings or self.ignored)


@dataclass(frozen=True)
class Ontology:
    """A named-class taxonomy: concepts, subclass edges, object properties.

    ``subclass_edges`` holds ``(child, parent)`` pairs and may express
    multiple parents per child.  Names that appear only as edge endpoints
    or property domains/ranges are auto-registered into ``concepts``.
    """

    id: str
    concepts: frozenset[ConceptId] = frozenset()
    subclass_edges: frozenset[Edge] = frozenset()
    object_properties: frozenset[ObjectProperty] = frozenset()
    report: ParseReport = field(default_factory=ParseReport, compare=False, repr=False)

    def __post_init__(self):
        edges = frozenset((str(c), str(p)) for c, p in self.subclass_edges)
        for child, parent in edges:
            if child == parent:
                raise CycleError([child])
        props = frozenset(self.object_properties)
        names = set(map(str, self.concepts))
        for child, parent in edges:
            names.add(child)
            names.add(parent)
        for prop in props:
            names.update(prop.domain)
            names.update(prop.range)
        cycles = find_cycles(edges)
        if cycles:
            raise CycleError(cycles[0])
        object.__setattr__(self, "concepts", frozenset(names))
        object.__setattr__(self, "subclass_edges", edges)
        object.__setattr__(self, "object_properties", props)

    def parent_map(self) -> dict[ConceptId, frozenset[ConceptId]]:
        """Direct super-concepts of every concept (empty set for roots)."""
        up: dict[ConceptId, set[ConceptId]] = {c: set() for c in self.concepts}
        for child, parent in self.subclass_edges:
            up[child].add(parent)
        return {c: frozenset(v) for c, v in up.items()}

    def child_map(self) -> dict[ConceptId, frozenset[ConceptId]]:
        """Direct sub-concepts of every concept (empty set for leaves)."""
        down: dict[ConceptId, set[ConceptId]] = {c: set() for c in self.concepts}
        for child, parent in self.subclass_edges:
            down[parent].add(child)
        return {c: frozenset(v) for c, v in down.items()}

    def property_names_of(self, concept: ConceptId) -> frozenset[str]:
        """Names of object properties the concept participates in (domain or range)."""
        return frozenset(
            p.name for p in self.object_properties if concept in p.domain or concept in p.range
        )


def find_cycles(edges: Iterable[Edge]) -> list[list[ConceptId]]:
    """Cycles in an edge set, each as an ordered node list starting at its
    lexicographically smallest member.

    A deterministic DFS reports one cycle per back edge it encounters; a
    cyclic graph therefore always yields at least one cycle, though not
    necessarily every elementary one.  Returns ``[]`` for a DAG.
    """
    adjacency: dict[str, list[str]] = {}
    nodes: set[str] = set()
    for child, parent in edges:
        adjacency.setdefault(child, []).append(parent)
        nodes.add(child)
        nodes.add(parent)
    for targets in adjacency.values():
        targets.sort()

    cycles: list[list[str]] = []
    seen_keys: set[tuple[str, ...]] = set()
    visited: set[str] = set()
    for start in sorted(nodes):
        if start in visited:
            continue
        path = [start]
        on_path = {start}
        stack = [(start, iter(adjacency.get(start, ())))]
        while stack:
            node, targets = stack[-1]
            nxt = next(targets, None)
            if nxt is None:
                stack.pop()
                on_path.discard(node)
                path.pop()
                visited.add(node)
                continue
            if nxt in on_path:
                cycle = path[path.index(nxt):]
                pivot = cycle.index(min(cycle))
                cycle = cycle[pivot:] + cycle[:pivot]
                key = tuple(cycle)
                if key not in seen_keys:
                    seen_keys.add(key)
                    cycles.append(cycle)
            elif nxt not in visited:
                path.append(nxt)
                on_path.add(nxt)
                stack.append((nxt, iter(adjacency.get(nxt, ()))))
    return cycles
