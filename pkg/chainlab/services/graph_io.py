"""Graph file reading and writing.

A graph file holds one JSON document per line, either a ``chain-spec`` or
an ``edge-list`` document. Graph arguments on the command line may also be
given inline: ``half:7``, ``k=2:u=1,2:v=2,1`` or a JSON document.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path

from pydantic import TypeAdapter, ValidationError

from chainlab.models.graph import (
    ChainGraphSpec,
    ChainSpecDocument,
    EdgeListDocument,
    GraphDocument,
    HalfGraphId,
)
from chainlab.services.graph_core import Graph, build_chain_graph, graph_from_edges

logger = logging.getLogger(__name__)

_document_adapter: TypeAdapter[ChainSpecDocument | EdgeListDocument] = TypeAdapter(GraphDocument)

_HALF = re.compile(r"^half:(-?\d+)$")
_SPEC = re.compile(r"^k=(-?\d+):u=([-\d,]*):v=([-\d,]*)$")


class GraphFileError(ValueError):
    """Malformed graph document; the message names the offending field."""


def _describe(exc: ValidationError, where: str) -> str:
    first = exc.errors()[0]
    field = ".".join(str(part) for part in first["loc"])
    if not field:
        return f"{where}: {first['msg']}"
    return f"{where}: field '{field}': {first['msg']}"


def parse_document(text: str, where: str = "graph") -> Graph:
    try:
        doc = _document_adapter.validate_json(text)
        if isinstance(doc, ChainSpecDocument):
            return build_chain_graph(doc.to_spec())
        return graph_from_edges(doc.n, doc.u_class, [tuple(e) for e in doc.edges])
    except ValidationError as exc:
        raise GraphFileError(_describe(exc, where)) from exc


def document_for(g: Graph) -> ChainSpecDocument | EdgeListDocument:
    """chain-spec document when the graph carries its spec, else an edge list."""
    if g.spec is not None:
        return ChainSpecDocument(
            type="chain-spec", k=g.spec.k, u_sizes=list(g.spec.u_sizes),
            v_sizes=list(g.spec.v_sizes),
        )
    return EdgeListDocument(
        type="edge-list",
        n=g.n,
        u_class=list(g.class_indices("U")),
        edges=sorted(g.edges()),
    )


def dump_graphs(graphs: list[Graph]) -> str:
    return "".join(document_for(g).model_dump_json() + "\n" for g in graphs)


def read_graph_file(path: Path) -> list[Graph]:
    graphs = []
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise GraphFileError(f"{path}: {exc.strerror}") from exc
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        graphs.append(parse_document(line, f"{path}:{lineno}"))
    if not graphs:
        raise GraphFileError(f"{path}: no graph documents")
    logger.debug("read %d graphs from %s", len(graphs), path)
    return graphs


def _sizes(text: str, field: str) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise GraphFileError(f"field '{field}_sizes': expected comma-separated integers") from exc


def parse_spec_shorthand(text: str) -> ChainGraphSpec | None:
    """``half:K`` or ``k=K:u=a,b:v=c,d``; None when neither form matches."""
    try:
        if m := _HALF.match(text):
            return HalfGraphId(k=int(m.group(1))).to_spec()
        if m := _SPEC.match(text):
            return ChainGraphSpec(
                k=int(m.group(1)), u_sizes=_sizes(m.group(2), "u"), v_sizes=_sizes(m.group(3), "v"),
            )
    except ValidationError as exc:
        raise GraphFileError(_describe(exc, text)) from exc
    return None


def resolve_graphs(arg: str) -> list[Graph]:
    """Graphs named by a CLI argument: existing file, inline shorthand, or inline JSON."""
    text = arg.strip()
    if (spec := parse_spec_shorthand(text)) is not None:
        return [build_chain_graph(spec)]
    if text.startswith("{"):
        return [parse_document(text, "inline graph")]
    path = Path(arg)
    if path.is_file():
        return read_graph_file(path)
    raise GraphFileError(f"'{arg}' is neither a graph file nor an inline spec (half:K, k=..:u=..:v=..)")
