"""Exception types shared across the package."""

from __future__ import annotations

from collections.abc import Sequence


class OntoalignError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(OntoalignError):
    """Malformed RDF/XML input.

    ``line`` and ``column`` are 1-based positions in the source text when
    the underlying XML parser could report them.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class CycleError(OntoalignError):
    """The subclass graph contains a cycle; taxonomies must be DAGs."""

    def __init__(self, cycle: Sequence[str]):
        self.cycle = list(cycle)
        loop = " -> ".join(self.cycle + self.cycle[:1])
        super().__init__(f"subclass cycle: {loop}")


class UnknownConceptError(OntoalignError):
    """A concept name does not exist in the ontology it was looked up in."""

    def __init__(self, concept: str, ontology_id: str = ""):
        where = f" in ontology '{ontology_id}'" if ontology_id else ""
        super().__init__(f"unknown concept '{concept}'{where}")
        self.concept = concept


class InvalidNameError(OntoalignError):
    """A concept or synonym term is empty once normalized."""


class FormatError(OntoalignError):
    """Malformed line-oriented input (lexicon, pairs, or alignment TSV)."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)
        self.line = line


class LexiconFormatError(FormatError):
    """A synonym lexicon line could not be parsed."""


class ConfigError(OntoalignError):
    """Invalid matcher configuration (bad weights, unknown predicate, ...)."""
