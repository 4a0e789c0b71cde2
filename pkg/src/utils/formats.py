"""
Formats module for Adjust
Text and JSON codecs for graph, query and Bayesian-network files
"""

import json
import logging
import math
import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.errors import GraphError, InvalidVertex, ParseError
from src.graphs.dag import Dag
from src.graphs.ugraph import UGraph
from src.oracle.discrete_bn import DiscreteBN

logger = logging.getLogger(__name__)

LABEL = re.compile(r'[A-Za-z0-9_]+')
SEPARATORS = re.compile(r'[\s,]+')


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    """Non-empty lines as (line number, tokens), comments stripped"""
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split('#', 1)[0].strip()
        if content:
            yield number, content.split()


def _label(token: str, line: int) -> str:
    if not LABEL.fullmatch(token):
        raise ParseError(f"invalid label '{token}' (use letters, digits and _)", line)
    return token


def parse_graph_text(text: str) -> Dag:
    """
    Parse `node <label> [hidden]` and `edge <from> <to>` lines

    Vertex ids follow the order of node lines; edge lines may appear
    anywhere in the file.
    """
    labels: List[str] = []
    hidden: List[int] = []
    declared: Dict[str, int] = {}
    edge_lines: List[Tuple[int, str, str]] = []

    for line, tokens in _lines(text):
        keyword = tokens[0]
        if keyword == 'node':
            if len(tokens) not in (2, 3) or (len(tokens) == 3 and tokens[2] != 'hidden'):
                raise ParseError("expected 'node <label> [hidden]'", line)
            label = _label(tokens[1], line)
            if label in declared:
                raise ParseError(f"node '{label}' declared twice", line)
            declared[label] = len(labels)
            if len(tokens) == 3:
                hidden.append(len(labels))
            labels.append(label)
        elif keyword == 'edge':
            if len(tokens) != 3:
                raise ParseError("expected 'edge <from> <to>'", line)
            edge_lines.append((line, _label(tokens[1], line), _label(tokens[2], line)))
        else:
            raise ParseError(f"unknown keyword '{keyword}'", line)

    edges = []
    for line, tail, head in edge_lines:
        for label in (tail, head):
            if label not in declared:
                raise ParseError(f"edge references undeclared node '{label}'", line)
        if tail == head:
            raise ParseError(f"self-loop on '{tail}'", line)
        edges.append((declared[tail], declared[head]))

    dag = Dag.from_edges(labels, edges, hidden)
    logger.debug(f"🔍 Parsed graph with {dag.n} nodes and {len(dag.edges)} edges")
    return dag


def dump_graph_text(g: Dag) -> str:
    lines = [f"node {label}{' hidden' if g.is_hidden(v) else ''}" for v, label in enumerate(g.labels)]
    lines += [f"edge {g.labels[u]} {g.labels[v]}" for u, v in sorted(g.edges)]
    return '\n'.join(lines) + '\n'


def parse_graph_json(text: str) -> Dag:
    """JSON mirror: {"nodes": [{"label": .., "hidden": ..}], "edges": [[from, to], ...]}"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno) from e
    if not isinstance(data, dict) or not isinstance(data.get('nodes'), list):
        raise ParseError("expected an object with a 'nodes' list")

    labels, hidden = [], []
    for entry in data['nodes']:
        if not isinstance(entry, dict) or not isinstance(entry.get('label'), str):
            raise ParseError(f"bad node entry {entry!r}")
        if not LABEL.fullmatch(entry['label']):
            raise ParseError(f"invalid label '{entry['label']}'")
        if entry.get('hidden', False):
            hidden.append(len(labels))
        labels.append(entry['label'])

    edges = data.get('edges', [])
    if not isinstance(edges, list) or not all(isinstance(e, list) and len(e) == 2 for e in edges):
        raise ParseError("edges must be [from, to] pairs")
    for edge in edges:
        if not all(isinstance(end, str) for end in edge):
            raise ParseError(f"edge endpoints must be labels, got {edge!r}")
    try:
        return Dag.from_labels(labels, [tuple(e) for e in edges], [labels[v] for v in hidden])
    except (GraphError, InvalidVertex) as e:
        raise ParseError(str(e)) from e


def dump_graph_json(g: Dag) -> str:
    data = {
        'nodes': [{'label': label, 'hidden': g.is_hidden(v)} for v, label in enumerate(g.labels)],
        'edges': [[g.labels[u], g.labels[v]] for u, v in sorted(g.edges)],
    }
    return json.dumps(data, indent=2) + '\n'


@dataclass(frozen=True)
class QuerySpec:
    """Query by labels, as read from a query file or the command line"""
    exposure: Optional[str] = None
    outcome: Optional[str] = None
    policy: Tuple[str, ...] = ()
    observed: Optional[Tuple[str, ...]] = None


def split_labels(value: str) -> Tuple[str, ...]:
    return tuple(token for token in SEPARATORS.split(value.strip()) if token)


def parse_query_text(text: str) -> QuerySpec:
    """`exposure A`, `outcome Y`, `policy L1 L2`, `observed ...` lines"""
    fields: Dict[str, object] = {}
    for line, tokens in _lines(text):
        keyword, values = tokens[0], split_labels(' '.join(tokens[1:]))
        for token in values:
            _label(token, line)
        if keyword in fields:
            raise ParseError(f"'{keyword}' given twice", line)
        if keyword in ('exposure', 'outcome'):
            if len(values) != 1:
                raise ParseError(f"expected '{keyword} <label>'", line)
            fields[keyword] = values[0]
        elif keyword in ('policy', 'observed'):
            fields[keyword] = values
        else:
            raise ParseError(f"unknown keyword '{keyword}'", line)
    return QuerySpec(**fields)


def parse_bn_text(text: str, dag: Dag) -> DiscreteBN:
    """
    Parse a BN file for the given graph

    Format:
        card <label> <k>           one per vertex
        row <label> p_1 ... p_k    one per parent configuration, parents in
                                   graph order, last parent varying fastest
        outcome v_1 ... v_k        optional real values of the outcome states
    """
    cards: Dict[int, int] = {}
    rows: Dict[int, List[List[float]]] = {v: [] for v in dag.vertices}
    outcome: Optional[List[float]] = None
    row_lines: Dict[int, int] = {}

    def vertex(token: str, line: int) -> int:
        if token not in dag.labels:
            raise ParseError(f"unknown node '{token}'", line)
        return dag.index(token)

    def number(token: str, line: int) -> float:
        try:
            value = float(token)
        except ValueError:
            raise ParseError(f"'{token}' is not a number", line) from None
        if not math.isfinite(value):
            raise ParseError(f"'{token}' is not finite", line)
        return value

    for line, tokens in _lines(text):
        keyword = tokens[0]
        if keyword == 'card':
            if len(tokens) != 3 or not tokens[2].isdigit():
                raise ParseError("expected 'card <label> <k>'", line)
            v = vertex(tokens[1], line)
            if v in cards:
                raise ParseError(f"cardinality of '{tokens[1]}' given twice", line)
            cards[v] = int(tokens[2])
        elif keyword == 'row':
            if len(tokens) < 3:
                raise ParseError("expected 'row <label> p_1 ... p_k'", line)
            v = vertex(tokens[1], line)
            rows[v].append([number(t, line) for t in tokens[2:]])
            row_lines.setdefault(v, line)
        elif keyword == 'outcome':
            if outcome is not None:
                raise ParseError("'outcome' given twice", line)
            outcome = [number(t, line) for t in tokens[1:]]
        else:
            raise ParseError(f"unknown keyword '{keyword}'", line)

    missing = [dag.labels[v] for v in dag.vertices if v not in cards]
    if missing:
        raise ParseError(f"no cardinality for {', '.join(missing)}")

    cardinalities = tuple(cards[v] for v in dag.vertices)
    cpts = []
    for v in dag.vertices:
        shape = tuple(cardinalities[p] for p in dag.parents[v])
        table = rows[v]
        expected_rows = int(np.prod(shape, dtype=int))
        if len(table) != expected_rows or any(len(r) != cardinalities[v] for r in table):
            raise ParseError(f"'{dag.labels[v]}' needs {expected_rows} rows of {cardinalities[v]} probabilities",
                             row_lines.get(v))
        cpts.append(np.array(table, dtype=float).reshape(shape + (cardinalities[v],)))

    bn = DiscreteBN.build(dag, cardinalities, cpts, outcome)
    logger.debug(f"🔍 Parsed BN with {bn.state_count} joint states")
    return bn


def dump_bn_text(bn: DiscreteBN) -> str:
    dag = bn.dag
    lines = [f"card {label} {k}" for label, k in zip(dag.labels, bn.cardinalities)]
    for v in dag.vertices:
        table = bn.cpts[v].reshape(-1, bn.cardinalities[v])
        lines += [f"row {dag.labels[v]} " + ' '.join(repr(float(p)) for p in row) for row in table]
    if bn.outcome_values is not None:
        lines.append("outcome " + ' '.join(repr(float(x)) for x in bn.outcome_values))
    return '\n'.join(lines) + '\n'


def dump_ugraph_text(h: UGraph) -> str:
    """`node <label>` and `link <label> <label>` lines for an undirected graph"""
    lines = [f"node {label}" for label in h.labels]
    lines += [f"link {h.labels[u]} {h.labels[v]}" for u, v in h.edges]
    return '\n'.join(lines) + '\n'


def render_set(labels: Sequence[str], vertices: Sequence[int]) -> str:
    return '{' + ', '.join(labels[v] for v in vertices) + '}'
