"""JSON payloads for triples and certificates, with their schemas."""
from __future__ import annotations

import json
from typing import Any

from .dense import DenseResult, Exceptional
from .graph import Graph, GraphError
from .oracle import OracleReport
from .orient import BranchingPair, MatchingInfeasibility, STTriple
from .quartic import BadCertificate, TreeNode
from .sparsity import CircuitDecomposition, DenseSubset, PartitionCertificate, TreePair


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _ids(xs) -> list[int]:
    return sorted(int(x) for x in xs)


def triple_json(tr: STTriple) -> dict:
    return {"s": tr.s, "t": tr.t, "order": list(tr.order), "I": _ids(tr.I), "O": _ids(tr.O)}


def triple_from_json(obj: Any) -> STTriple:
    try:
        return STTriple(
            int(obj["s"]), int(obj["t"]), tuple(int(v) for v in obj["order"]),
            frozenset(int(e) for e in obj["I"]), frozenset(int(e) for e in obj["O"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed triple: {exc}") from None


def tree_node_json(node: TreeNode) -> dict:
    out: dict = {"kind": node.kind, "block": _ids(node.block)}
    if node.kind != "leaf":
        out["edges"] = list(node.edges)
        out["children"] = [tree_node_json(c) for c in node.children]
    return out


def to_json(obj: Any) -> dict:
    """Payload for any result or certificate type of the package."""
    if isinstance(obj, STTriple):
        return triple_json(obj)
    if isinstance(obj, TreePair):
        return {"kind": "tree-pair", "I": _ids(obj.tree_I), "O": _ids(obj.tree_O)}
    if isinstance(obj, PartitionCertificate):
        return {
            "kind": "partition",
            "blocks": [_ids(b) for b in obj.partition.blocks],
            "crossing": obj.crossing,
            "bound": obj.bound,
        }
    if isinstance(obj, DenseSubset):
        return {
            "kind": "dense-subset",
            "vertices": _ids(obj.vertices),
            "edges": obj.edges,
            "bound": 2 * len(obj.vertices) - 2,
        }
    if isinstance(obj, CircuitDecomposition):
        return {
            "circuits": [_ids(c) for c in obj.circuits],
            "circuit_edges": [_ids(c) for c in obj.circuit_edges],
            "singletons": _ids(obj.singletons),
        }
    if isinstance(obj, BadCertificate):
        out = {"kind": obj.kind, "quartic": _ids(obj.quartic)}
        if obj.kind == "non-matching":
            out["witness"] = {"a": obj.a, "b": obj.b, "c": obj.c}
        else:
            out["witness"] = {"cut": list(obj.cut)}
        return out
    if isinstance(obj, TreeNode):
        return {"kind": "coarsification-tree", "root": tree_node_json(obj)}
    if isinstance(obj, BranchingPair):
        return {
            "kind": "branching-pair",
            "out_branching": {str(k): v for k, v in obj.out_branching.items()},
            "in_branching": {str(k): v for k, v in obj.in_branching.items()},
        }
    if isinstance(obj, MatchingInfeasibility):
        return {
            "kind": "hall-violator",
            "demands": [[k, v] for k, v in obj.demands],
            "arcs": _ids(obj.arcs),
        }
    if isinstance(obj, DenseResult):
        return {"kind": "dense-triple", "subgraph_edges": list(obj.subgraph.edge_ids),
                "triple": triple_json(obj.triple)}
    if isinstance(obj, Exceptional):
        return {"kind": "exceptional", "cut_vertex": obj.cut_vertex,
                "cliques": [_ids(c) for c in obj.cliques]}
    if isinstance(obj, OracleReport):
        w = obj.witness
        if w is not None and not isinstance(w, (list, dict)):
            w = to_json(w)
        return {"kind": "oracle-report", "query": obj.query, "verdict": obj.verdict,
                "witness": w, "enumerated": obj.enumerated}
    raise TypeError(f"no JSON form for {type(obj).__name__}")


def graph_json(g: Graph) -> dict:
    return {"vertices": list(g.vertices), "edges": [[e, u, v] for e, u, v in g.edges]}


_INTS = {"type": "array", "items": {"type": "integer"}}

TRIPLE_SCHEMA = {
    "type": "object",
    "required": ["s", "t", "order", "I", "O"],
    "additionalProperties": False,
    "properties": {"s": {"type": "integer"}, "t": {"type": "integer"},
                   "order": _INTS, "I": _INTS, "O": _INTS},
}

_TREE_NODE = {
    "type": "object",
    "required": ["kind", "block"],
    "properties": {
        "kind": {"enum": ["leaf", "sum", "circuit"]},
        "block": _INTS,
        "edges": _INTS,
        "children": {"type": "array", "items": {"$ref": "#/$defs/node"}},
    },
}

SCHEMAS = {
    "triple": TRIPLE_SCHEMA,
    "tree-pair": {
        "type": "object", "required": ["kind", "I", "O"],
        "properties": {"kind": {"const": "tree-pair"}, "I": _INTS, "O": _INTS},
    },
    "partition": {
        "type": "object", "required": ["kind", "blocks", "crossing", "bound"],
        "properties": {"kind": {"const": "partition"},
                       "blocks": {"type": "array", "items": _INTS},
                       "crossing": {"type": "integer"}, "bound": {"type": "integer"}},
    },
    "dense-subset": {
        "type": "object", "required": ["kind", "vertices", "edges", "bound"],
        "properties": {"kind": {"const": "dense-subset"}, "vertices": _INTS,
                       "edges": {"type": "integer"}, "bound": {"type": "integer"}},
    },
    "decomposition": {
        "type": "object", "required": ["circuits", "circuit_edges", "singletons"],
        "properties": {"circuits": {"type": "array", "items": _INTS},
                       "circuit_edges": {"type": "array", "items": _INTS},
                       "singletons": _INTS},
    },
    "bad-certificate": {
        "type": "object", "required": ["kind", "quartic", "witness"],
        "properties": {
            "kind": {"enum": ["non-matching", "small-cut"]},
            "quartic": _INTS,
            "witness": {"oneOf": [
                {"type": "object", "required": ["a", "b", "c"],
                 "properties": {"a": {"type": "integer"}, "b": {"type": "integer"},
                                "c": {"type": "integer"}}},
                {"type": "object", "required": ["cut"], "properties": {"cut": _INTS}},
            ]},
        },
    },
    "coarsification-tree": {
        "$defs": {"node": _TREE_NODE},
        "type": "object", "required": ["kind", "root"],
        "properties": {"kind": {"const": "coarsification-tree"}, "root": {"$ref": "#/$defs/node"}},
    },
    "hall-violator": {
        "type": "object", "required": ["kind", "demands", "arcs"],
        "properties": {"kind": {"const": "hall-violator"},
                       "demands": {"type": "array", "items": {
                           "type": "array", "prefixItems": [{"enum": ["in", "out"]}, {"type": "integer"}]}},
                       "arcs": _INTS},
    },
    "dense-triple": {
        "type": "object", "required": ["kind", "subgraph_edges", "triple"],
        "properties": {"kind": {"const": "dense-triple"}, "subgraph_edges": _INTS,
                       "triple": TRIPLE_SCHEMA},
    },
    "exceptional": {
        "type": "object", "required": ["kind", "cut_vertex", "cliques"],
        "properties": {"kind": {"const": "exceptional"}, "cut_vertex": {"type": "integer"},
                       "cliques": {"type": "array", "items": _INTS}},
    },
    "oracle-report": {
        "type": "object", "required": ["kind", "query", "verdict", "witness", "enumerated"],
        "properties": {"kind": {"const": "oracle-report"}, "query": {"type": "string"},
                       "verdict": {"type": "boolean"}, "enumerated": {"type": "integer"}},
    },
    "verify": {
        "type": "object", "required": ["valid"],
        "properties": {"valid": {"type": "boolean"}, "violation": {"type": "string"}},
    },
    "transits": {
        "type": "object", "required": ["transits", "pairs", "any"],
        "properties": {
            "transits": _INTS, "any": {"type": "boolean"},
            "pairs": {"type": "array", "items": {
                "type": "object", "required": ["s", "t", "triple"],
                "properties": {"s": {"type": "integer"}, "t": {"type": "integer"},
                               "triple": {"oneOf": [{"type": "null"}, TRIPLE_SCHEMA]}}}},
        },
    },
}
