"""JSON model documents.

A document carries the schema, the augmenting arcs (by attribute name), the
class prior and CPTs, plus how the model was learned. Generation specs for
``augbayes gen`` use the same layout; only ``format_version``, ``schema``,
``arcs``, ``class_prior`` and ``cpts`` are required there.

Probabilities are written with Python's shortest round-trip float repr, so a
save/load cycle reproduces every double exactly.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .classifier import FitMeta, FittedClassifier
from .dataset import Attribute, Schema
from .errors import ModelFormatError, StructureError
from .mdl import NetworkStructure

FORMAT_VERSION = 1


def _base_to_text(base: float) -> str:
    return "e" if base == math.e else repr(float(base))


def _base_from_text(text) -> float:
    return math.e if text in ("e", None) else float(text)


def to_document(
    classifier: FittedClassifier,
    mode: str | None = None,
    weight_mode: str | None = None,
    mdl: float | None = None,
) -> dict:
    schema = classifier.schema
    names = schema.names
    cpts = {}
    for k, table in sorted(classifier.cpts.items()):
        parent = classifier.structure.parent_of(k)
        cpts[names[k]] = {
            "parent": names[parent] if parent is not None else None,
            # indexed [class][parent value][attribute value]
            "table": table.tolist(),
        }
    meta = classifier.fit_meta
    return {
        "format_version": FORMAT_VERSION,
        "schema": {
            "class": schema.class_attribute.name,
            "attributes": [{"name": a.name, "domain": list(a.domain)} for a in schema.attributes],
        },
        "mode": mode,
        "weight_mode": weight_mode,
        "arcs": [[names[p], names[c]] for p, c in classifier.structure.augmenting_arcs],
        "class_prior": classifier.class_prior.tolist(),
        "cpts": cpts,
        "fit": {
            "N": meta.N,
            "smoothing": meta.smoothing,
            "alpha": meta.alpha,
            "log_base": _base_to_text(meta.log_base),
        },
        "mdl": mdl,
    }


def from_document(doc: dict) -> FittedClassifier:
    try:
        version = doc["format_version"]
    except (KeyError, TypeError):
        raise ModelFormatError("model document has no format_version") from None
    if version != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported format_version {version!r}")
    try:
        sdoc = doc["schema"]
        attrs = tuple(Attribute(a["name"], tuple(str(v) for v in a["domain"])) for a in sdoc["attributes"])
        names = [a.name for a in attrs]
        schema = Schema(attrs, names.index(sdoc["class"]))
        arcs = tuple((names.index(p), names.index(c)) for p, c in doc["arcs"])
        structure = NetworkStructure(schema, arcs)
        prior = np.asarray(doc["class_prior"], dtype=np.float64)
        cpts = {}
        for k, parent in structure.parents().items():
            entry = doc["cpts"][names[k]]
            declared = entry.get("parent")
            expected = names[parent] if parent is not None else None
            if declared != expected:
                raise ModelFormatError(
                    f"CPT for {names[k]!r} lists parent {declared!r}, arcs say {expected!r}"
                )
            table = np.asarray(entry["table"], dtype=np.float64)
            shape = (
                schema.class_cardinality,
                schema.cardinality(parent) if parent is not None else 1,
                schema.cardinality(k),
            )
            if table.shape != shape:
                raise ModelFormatError(f"CPT for {names[k]!r} has shape {table.shape}, expected {shape}")
            cpts[k] = table
        if prior.shape != (schema.class_cardinality,):
            raise ModelFormatError("class prior has the wrong length")
        fit = doc.get("fit") or {}
        meta = FitMeta(
            smoothing=fit.get("smoothing", "given"),
            alpha=float(fit.get("alpha", 0.0)),
            N=int(fit.get("N", 0)),
            log_base=_base_from_text(fit.get("log_base")),
        )
    except (KeyError, ValueError, TypeError, StructureError) as exc:
        if isinstance(exc, ModelFormatError):
            raise
        raise ModelFormatError(f"malformed model document: {exc}") from exc
    return FittedClassifier(structure, prior, cpts, meta)


def save_model(path, classifier: FittedClassifier, **info) -> dict:
    doc = to_document(classifier, **info)
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    return doc


def load_document(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: not valid JSON ({exc})") from exc


def load_model(path) -> FittedClassifier:
    return from_document(load_document(path))
