"""RDF/XML reader for the OWL subset this package aligns.

Supported constructs: ``owl:Class`` (rdf:ID declaration or rdf:about
mention, optionally nested), ``rdfs:subClassOf`` in attribute and nested
form (``owl:subClassOf`` is accepted as a common in-the-wild variant),
``owl:ObjectProperty`` with ``rdfs:domain``, ``rdfs:range`` (direct or an
``owl:unionOf`` collection, which is flattened), and ``owl:inverseOf``.
``owl:disjointWith`` and ``owl:equivalentClass`` are read and discarded.
Anything else becomes an "ignored element" note in the parse report.

Vocabulary matching is lenient: prefixes bound to the owl/rdf/rdfs
namespaces (or spelled like them when the document declares no namespaces)
are recognized case-insensitively, so ``owl:CLASS`` works.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET

from .errors import ParseError
from .model import ConceptId, Edge, ObjectProperty, Ontology, ParseReport

OWL_NS = "http://www.w3.org/2002/07/owl#"
RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"

_CANONICAL_NS = {"owl": OWL_NS, "rdf": RDF_NS, "rdfs": RDFS_NS}
_VOCAB_BY_URI = {OWL_NS: "owl", RDF_NS: "rdf", RDFS_NS: "rdfs"}

_PREFIX_IN_TAG = re.compile(r"</?([A-Za-z][\w.-]*):")
_PREFIX_IN_ATTR = re.compile(r"\s([A-Za-z][\w.-]*):[A-Za-z][\w.-]*\s*=")
_DECLARED_PREFIX = re.compile(r"xmlns:([\w.-]+)\s*=")
_FIRST_START_TAG = re.compile(r"<(?![?!])[^>\s/]+")


def _declare_missing_prefixes(text: str) -> str:
    """Bind undeclared namespace prefixes so bare snippets still parse.

    Prefixes spelled like owl/rdf/rdfs (any case) get the canonical URI;
    unknown ones get a synthetic URI and their elements end up ignored.
    """
    declared = set(_DECLARED_PREFIX.findall(text))
    used = set(_PREFIX_IN_TAG.findall(text)) | set(_PREFIX_IN_ATTR.findall(text))
    missing = sorted(used - declared - {"xml", "xmlns"})
    if not missing:
        return text
    match = _FIRST_START_TAG.search(text)
    if match is None:
        return text
    decls = "".join(
        f' xmlns:{p}="{_CANONICAL_NS.get(p.lower(), "urn:ontoalign:ns:" + p.lower())}"'
        for p in missing
    )
    pos = match.end()
    return text[:pos] + decls + text[pos:]


def _parse_xml(source_text: str) -> ET.Element:
    prepared = _declare_missing_prefixes(source_text)
    try:
        return ET.fromstring(prepared)
    except ET.ParseError as exc:
        if prepared is not source_text:
            # Report the position in the caller's text, not the prepared one.
            try:
                ET.fromstring(source_text)
            except ET.ParseError as original:
                exc = original
        line, column = exc.position
        raise ParseError(f"malformed XML: {exc.msg if hasattr(exc, 'msg') else exc}",
                         line=line, column=column) from None


def _split_tag(tag: str) -> tuple[str, str]:
    if tag.startswith("{"):
        uri, _, local = tag[1:].partition("}")
        return uri, local
    return "", tag


def _vocab(elem: ET.Element) -> tuple[str, str] | None:
    """(vocabulary, lowercase local name) for owl/rdf/rdfs elements, else None."""
    uri, local = _split_tag(elem.tag)
    vocab = _VOCAB_BY_URI.get(uri)
    if vocab is None:
        return None
    return vocab, local.lower()

def _display_name(elem: ET.Element) -> str:
    uri, local = _split_tag(elem.tag)
    vocab = _VOCAB_BY_URI.get(uri)
    return f"{vocab}:{local}" if vocab else local


def _attr(elem: ET.Element, local_name: str) -> str | None:
    """Attribute value looked up by case-insensitive local name."""
    wanted = local_name.lower()
    for key, value in elem.attrib.items():
        _, local = _split_tag(key)
        if local.lower() == wanted:
            return value
    return None


def _local_ref(value: str) -> str:
    """Local name of an rdf:ID / rdf:about / rdf:resource value."""
    value = value.strip()
    if "#" in value:
        value = value.rsplit("#", 1)[1]
    elif "/" in value:
        value = value.rsplit("/", 1)[1]
    return value


class _Scan:
    """Mutable state threaded through one document walk."""

    def __init__(self):
        self.declared: set[ConceptId] = set()      # owl:Class with rdf:ID
        self.mentioned: set[ConceptId] = set()     # owl:Class with rdf:about
        self.referenced: set[ConceptId] = set()    # rdf:resource style only
        self.edges: list[Edge] = []
        self.properties: dict[str, dict] = {}
        self.discarded: list[str] = []
        self.merge_warnings: list[str] = []
        self.ignored: list[str] = []
        self.duplicate_ids: list[str] = []


def _class_name(elem: ET.Element, scan: _Scan) -> ConceptId | None:
    raw_id = _attr(elem, "id")
    if raw_id is not None:
        name = _local_ref(raw_id)
        if name in scan.declared:
            scan.duplicate_ids.append(name)
        scan.declared.add(name)
        return name
    about = _attr(elem, "about")
    if about is not None:
        name = _local_ref(about)
        scan.mentioned.add(name)
        return name
    return None  # anonymous class expression


def _scan_class(elem: ET.Element, scan: _Scan) -> ConceptId | None:
    name = _class_name(elem, scan)
    for child in elem:
        kind = _vocab(child)
        local = kind[1] if kind else None
        if local == "subclassof" and kind[0] in ("rdfs", "owl"):
            resource = _attr(child, "resource")
            if resource is not None:
                parent = _local_ref(resource)
                scan.referenced.add(parent)
                if name is not None:
                    scan.edges.append((name, parent))
            for nested in child:
                if _vocab(nested) == ("owl", "class"):
                    parent = _scan_class(nested, scan)
                    if name is not None and parent is not None:
                        scan.edges.append((name, parent))
                else:
                    scan.ignored.append(f"{_display_name(nested)} inside subClassOf")
        elif local in ("disjointwith", "equivalentclass") and kind[0] == "owl":
            scan.discarded.append(f"owl:{'disjointWith' if local == 'disjointwith' else 'equivalentClass'}"
                                  f" on '{name or '(anonymous)'}'")
            # The relation is dropped, but nested owl:Class elements still
            # register (and may carry their own axioms).
            for nested in child:
                if _vocab(nested) == ("owl", "class"):
                    _scan_class(nested, scan)
        else:
            scan.ignored.append(f"{_display_name(child)} on '{name or '(anonymous)'}'")
    return name


def _range_members(range_elem: ET.Element, scan: _Scan, prop_name: str) -> list[ConceptId]:
    resource = _attr(range_elem, "resource")
    if resource is not None:
        member = _local_ref(resource)
        scan.referenced.add(member)
        return [member]
    members: list[ConceptId] = []
    for child in range_elem:
        if _vocab(child) != ("owl", "class"):
            scan.ignored.append(f"{_display_name(child)} inside range of '{prop_name}'")
            continue
        union = next((g for g in child if _vocab(g) == ("owl", "unionof")), None)
        if union is None:
            named = _scan_class(child, scan)
            if named is not None:
                members.append(named)
            continue
        flattened = []
        for entry in union:
            if _vocab(entry) == ("owl", "class"):
                named = _scan_class(entry, scan)
                if named is not None:
                    flattened.append(named)
            else:
                scan.ignored.append(f"{_display_name(entry)} inside unionOf of '{prop_name}'")
        scan.discarded.append(
            f"owl:unionOf range of '{prop_name}' flattened ({len(flattened)} classes)")
        members.extend(flattened)
    return members


def _scan_property(elem: ET.Element, scan: _Scan) -> None:
    raw = _attr(elem, "id") or _attr(elem, "about")
    if raw is None:
        scan.ignored.append("owl:ObjectProperty without rdf:ID/rdf:about")
        return
    name = _local_ref(raw)
    record = scan.properties.get(name)
    if record is None:
        record = {"domain": set(), "range": set(), "inverse_of": None}
        scan.properties[name] = record
    else:
        scan.merge_warnings.append(f"duplicate owl:ObjectProperty '{name}' merged")
    for child in elem:
        kind = _vocab(child)
        local = kind[1] if kind else None
        if local == "domain" and kind[0] == "rdfs":
            resource = _attr(child, "resource")
            if resource is not None:
                member = _local_ref(resource)
                scan.referenced.add(member)
                record["domain"].add(member)
            for nested in child:
                if _vocab(nested) == ("owl", "class"):
                    named = _scan_class(nested, scan)
                    if named is not None:
                        record["domain"].add(named)
        elif local == "range" and kind[0] == "rdfs":
            record["range"].update(_range_members(child, scan, name))
        elif local == "inverseof" and kind[0] == "owl":
            resource = _attr(child, "resource")
            if resource is not None:
                record["inverse_of"] = _local_ref(resource)
        else:
            scan.ignored.append(f"{_display_name(child)} on property '{name}'")


def parse_ontology(source_text: str, id: str) -> Ontology:
    """Parse RDF/XML text into an :class:`Ontology` labelled ``id``.

    Raises :class:`ParseError` for malformed XML and :class:`CycleError`
    when the subclass edges do not form a DAG.  Recoverable oddities
    (discarded constructs, auto-registered names, duplicate declarations,
    unsupported elements) are collected in the ontology's parse report.
    """
    root = _parse_xml(source_text)
    scan = _Scan()
    top = list(root) if _vocab(root) == ("rdf", "rdf") else [root]
    for elem in top:
        kind = _vocab(elem)
        if kind == ("owl", "class"):
            _scan_class(elem, scan)
        elif kind == ("owl", "objectproperty"):
            _scan_property(elem, scan)
        else:
            scan.ignored.append(f"top-level {_display_name(elem)}")

    seen_dupes: set[str] = set()
    for name in scan.duplicate_ids:
        if name not in seen_dupes:
            seen_dupes.add(name)
            scan.merge_warnings.append(f"duplicate owl:Class '{name}' merged")

    auto = scan.referenced - scan.declared - scan.mentioned
    properties = frozenset(
        ObjectProperty(name, frozenset(rec["domain"]), frozenset(rec["range"]), rec["inverse_of"])
        for name, rec in scan.properties.items()
    )
    report = ParseReport(
        discarded=tuple(scan.discarded),
        auto_registered=tuple(sorted(auto)),
        merge_warnings=tuple(scan.merge_warnings),
        ignored=tuple(scan.ignored),
    )
    return Ontology(
        id=id,
        concepts=frozenset(scan.declared | scan.mentioned | scan.referenced),
        subclass_edges=frozenset(scan.edges),
        object_properties=properties,
        report=report,
    )


def parse_report(ontology: Ontology) -> ParseReport:
    """The parse report attached to an ontology (empty for built-in-code ones)."""
    return ontology.report
