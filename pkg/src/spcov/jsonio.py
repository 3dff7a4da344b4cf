"""Byte-deterministic JSON/CSV serialization.

All artifacts (instances, rulers, reports, sweep tables) are written with
sorted keys and 17-significant-digit floats so identical inputs produce
identical bytes and float64 values survive a round trip exactly.
"""

import json

import numpy as np

from spcov.errors import SpcovError
from spcov.graphs import Graph, all_pairs_shortest_paths, make_graph
from spcov.model import SPCovInstance, graph_cov
from spcov.rulers import Ruler


def fmt_float(x) -> str:
    """Decimal text with 17 significant digits (round-trips float64)."""
    value = float(x)
    if not np.isfinite(value):
        raise SpcovError("cannot serialize non-finite float")
    return format(value, ".17g")


def dumps_canonical(obj) -> str:
    """JSON text with sorted keys and fixed float formatting."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        for key in obj:
            if not isinstance(key, str):
                raise SpcovError("JSON object keys must be strings")
        items = (f"{json.dumps(k)}: {dumps_canonical(v)}"
                 for k, v in sorted(obj.items()))
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps_canonical(v) for v in obj) + "]"
    raise SpcovError(f"cannot serialize object of type {type(obj).__name__}")


def write_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(dumps_canonical(obj))
        handle.write("\n")


def load_json(path):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def ruler_to_obj(r: Ruler) -> dict:
    return {"D": r.D, "marks": list(r.marks)}


def ruler_from_obj(obj) -> Ruler:
    if not isinstance(obj, dict) or "D" not in obj or "marks" not in obj:
        raise SpcovError("ruler JSON requires keys 'D' and 'marks'")
    return Ruler(D=int(obj["D"]), marks=tuple(int(m) for m in obj["marks"]))


def graph_to_obj(g: Graph) -> dict:
    obj = {"kind": g.kind, "d": g.node_count}
    for name, value in g.params:
        if name == "d":
            continue
        if name == "edges":
            obj["edges"] = [list(edge) for edge in value]
        else:
            obj[name] = int(value)
    return obj


def graph_from_obj(obj) -> Graph:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SpcovError("graph JSON requires a 'kind' key")
    kind = obj["kind"]
    if kind in ("path", "cycle", "complete"):
        g = make_graph(kind, d=int(obj["d"]))
    elif kind == "star":
        g = make_graph(kind, branches=int(obj["branches"]),
                       depth=int(obj["depth"]))
    elif kind == "grid":
        g = make_graph(kind, rows=int(obj["rows"]), cols=int(obj["cols"]))
    elif kind == "edges":
        g = make_graph(kind, d=int(obj["d"]), edges=obj["edges"])
    else:
        raise SpcovError(f"unknown graph kind {kind!r}")
    if "d" in obj and int(obj["d"]) != g.node_count:
        raise SpcovError(
            f"graph JSON declares d={obj['d']} but the {kind} parameters "
            f"give {g.node_count} nodes"
        )
    return g


def instance_to_obj(inst: SPCovInstance) -> dict:
    return {"graph": graph_to_obj(inst.graph), "a": list(inst.a)}


def instance_from_obj(obj) -> SPCovInstance:
    if not isinstance(obj, dict) or "graph" not in obj or "a" not in obj:
        raise SpcovError("instance JSON requires keys 'graph' and 'a'")
    g = graph_from_obj(obj["graph"])
    t = all_pairs_shortest_paths(g)
    return graph_cov(g, t, [float(v) for v in obj["a"]])


SWEEP_HEADER = "n,trial,spectral_rel,frob_rel,max_entry,wall_ms"


def sweep_rows_to_csv(rows) -> str:
    lines = [SWEEP_HEADER]
    for row in rows:
        lines.append(",".join((
            str(row.n), str(row.trial), fmt_float(row.spectral_rel),
            fmt_float(row.frob_rel), fmt_float(row.max_entry),
            fmt_float(row.wall_ms),
        )))
    return "\n".join(lines) + "\n"
