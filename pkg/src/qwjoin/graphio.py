"""JSON input and output: graph files and analysis reports.

Graphs travel as a small JSON document (order, simple flag, weighted edge
and loop lists). Analysis results travel as tagged JSON that reconstructs
the original certificate objects, so a report written to disk can be
reloaded and re-serialized to the identical document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, is_dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .bounds import BoundReport, MimicrySummary
from .graphs import WeightedGraph, is_simple
from .transfer import (
    InducedTransferReport,
    JoinPeriodRatio,
    PeriodCertificate,
    PSTCertificate,
    SupportPartition,
    SymbolicTime,
)

_TAGGED_CLASSES = {
    cls.__name__: cls
    for cls in (
        SupportPartition,
        PeriodCertificate,
        PSTCertificate,
        JoinPeriodRatio,
        InducedTransferReport,
        BoundReport,
        MimicrySummary,
    )
}

_TUPLE_FIELDS = {"pair"}


def graph_to_dict(graph: WeightedGraph) -> dict:
    return {
        "order": graph.order,
        "simple": is_simple(graph),
        "edges": [[u, v, w] for (u, v), w in sorted(graph.edges.items())],
        "loops": [[v, w] for v, w in sorted(graph.loops.items())],
    }


def graph_from_dict(data: dict) -> WeightedGraph:
    if not isinstance(data, dict):
        raise ValueError("a graph document must be a JSON object")
    unknown = set(data) - {"order", "simple", "edges", "loops"}
    if unknown:
        raise ValueError(f"unknown graph fields: {sorted(unknown)}")
    if "order" not in data:
        raise ValueError("a graph document needs an order")
    graph = WeightedGraph(
        data["order"], data.get("edges", ()), data.get("loops", ())
    )
    declared = data.get("simple")
    if declared is not None and bool(declared) != is_simple(graph):
        raise ValueError("the simple flag contradicts the loop list")
    return graph


def load_graph(path) -> WeightedGraph:
    with open(path) as handle:
        return graph_from_dict(json.load(handle))


def save_graph(graph: WeightedGraph, path) -> None:
    Path(path).write_text(json.dumps(graph_to_dict(graph), indent=2) + "\n")


def to_jsonable(value):
    """Lower a result object to plain JSON values with type tags."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        return {"__fraction__": [value.numerator, value.denominator]}
    if isinstance(value, complex):
        return {"__complex__": [value.real, value.imag]}
    if isinstance(value, SymbolicTime):
        return {
            "__time__": [value.pi_numerator, value.pi_denominator, value.sqrt_divisor]
        }
    if isinstance(value, WeightedGraph):
        return {"__graph__": graph_to_dict(value)}
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return {
                "__array__": {
                    "real": value.real.tolist(),
                    "imag": value.imag.tolist(),
                }
            }
        return {"__array__": value.tolist()}
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.complexfloating):
        return {"__complex__": [float(value.real), float(value.imag)]}
    if is_dataclass(value) and type(value).__name__ in _TAGGED_CLASSES:
        payload = {
            f.name: to_jsonable(getattr(value, f.name)) for f in fields(value)
        }
        return {"__kind__": type(value).__name__, "fields": payload}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    raise TypeError(f"cannot serialize {type(value).__name__}")


def from_jsonable(value):
    """Rebuild result objects from tagged JSON values."""
    if isinstance(value, list):
        return [from_jsonable(item) for item in value]
    if not isinstance(value, dict):
        return value
    if "__fraction__" in value:
        num, den = value["__fraction__"]
        return Fraction(num, den)
    if "__complex__" in value:
        re, im = value["__complex__"]
        return complex(re, im)
    if "__time__" in value:
        return SymbolicTime(*value["__time__"])
    if "__graph__" in value:
        return graph_from_dict(value["__graph__"])
    if "__array__" in value:
        body = value["__array__"]
        if isinstance(body, dict):
            return np.asarray(body["real"]) + 1j * np.asarray(body["imag"])
        return np.asarray(body, dtype=float)
    if "__kind__" in value:
        cls = _TAGGED_CLASSES[value["__kind__"]]
        kwargs = {key: from_jsonable(item) for key, item in value["fields"].items()}
        for name in _TUPLE_FIELDS & set(kwargs):
            kwargs[name] = tuple(kwargs[name])
        return cls(**kwargs)
    return {key: from_jsonable(item) for key, item in value.items()}


@dataclass
class AnalysisReport:
    kind: str
    payload: object


def report_to_json(report: AnalysisReport) -> str:
    doc = {"kind": report.kind, "payload": to_jsonable(report.payload)}
    return json.dumps(doc, sort_keys=True, indent=2)


def report_from_json(text: str) -> AnalysisReport:
    doc = json.loads(text)
    return AnalysisReport(kind=doc["kind"], payload=from_jsonable(doc["payload"]))
