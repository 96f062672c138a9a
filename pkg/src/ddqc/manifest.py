"""Manifest CSV files describing labeled corpora on disk.

Schema: ``path,label,model,n,seed,params_json`` plus an optional
``timestamp`` column used to order temporal snapshots. Paths are relative to
the manifest's directory.
"""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError
from .generators import LabeledGraph
from .graph_io import read_edge_list, write_edge_list

COLUMNS = ("path", "label", "model", "n", "seed", "params_json")
REQUIRED = ("path", "label")


@dataclass(frozen=True)
class ManifestRow:
    path: str
    label: str
    model: str = ""
    n: str = ""
    seed: str = ""
    params_json: str = ""
    timestamp: str = ""

    @property
    def instance_id(self) -> str:
        return Path(self.path).stem


def read_manifest(path: str | os.PathLike) -> list[ManifestRow]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED if c not in header]
        if missing:
            raise ParseError(f"manifest lacks required columns {missing}", source=str(path))
        rows = []
        for lineno, rec in enumerate(reader, start=2):
            if not rec.get("path") or not rec.get("label"):
                raise ParseError("empty path or label", lineno, str(path))
            rows.append(ManifestRow(**{k: (rec.get(k) or "") for k in COLUMNS + ("timestamp",)}))
    ids = [r.instance_id for r in rows]
    if len(set(ids)) != len(ids):
        raise ParseError("manifest has duplicate instance ids (file stems)", source=str(path))
    return rows


def load_corpus(manifest_path: str | os.PathLike) -> list[LabeledGraph]:
    base = Path(manifest_path).parent
    out = []
    for row in read_manifest(manifest_path):
        graph = read_edge_list(base / row.path)
        out.append(LabeledGraph(graph, row.label, row.instance_id, None, row.timestamp or None))
    return out


def manifest_text(items: list[LabeledGraph], paths: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    with_ts = any(it.timestamp for it in items)
    w.writerow(COLUMNS + (("timestamp",) if with_ts else ()))
    for it, p in zip(items, paths):
        spec = it.spec
        row = [p, it.label,
               spec.model if spec else "",
               spec.n_nodes if spec else it.graph.node_count,
               spec.seed if spec else "",
               spec.params_json() if spec else ""]
        if with_ts:
            row.append(it.timestamp or "")
        w.writerow(row)
    return buf.getvalue()


def write_corpus(items: list[LabeledGraph], out_dir: str | os.PathLike, manifest_name: str = "manifest.csv") -> Path:
    """Write one edge-list file per item and a manifest; returns the manifest path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for it in items:
        rel = f"{it.instance_id}.edges"
        write_edge_list(it.graph, out / rel)
        paths.append(rel)
    manifest = out / manifest_name
    with open(manifest, "w", encoding="utf-8", newline="") as fh:
        fh.write(manifest_text(items, paths))
    return manifest
