"""Discrete tabular data: schema, encoded rows and joint count tables."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DatasetError, SchemaMismatchError, UnseenValueError

MISSING_POLICIES = ("drop-row", "error")


@dataclass(frozen=True)
class Attribute:
    name: str
    domain: tuple[str, ...]

    @property
    def cardinality(self) -> int:
        return len(self.domain)


@dataclass(frozen=True)
class Schema:
    """Ordered attributes with finite label domains and a designated class.

    The class attribute is tracked by ``class_index`` and may sit anywhere in
    the attribute list.
    """

    attributes: tuple[Attribute, ...]
    class_index: int
    _lookup: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        attrs = tuple(
            a if isinstance(a, Attribute) else Attribute(a[0], tuple(a[1]))
            for a in self.attributes
        )
        object.__setattr__(self, "attributes", attrs)
        names = [a.name for a in attrs]
        if len(set(names)) != len(names):
            raise DatasetError(f"attribute names are not distinct: {names}")
        for a in attrs:
            if len(a.domain) < 1:
                raise DatasetError(f"attribute {a.name!r} has an empty domain")
            if len(set(a.domain)) != len(a.domain):
                raise DatasetError(f"attribute {a.name!r} has repeated labels")
        if not 0 <= self.class_index < len(attrs):
            raise DatasetError(f"class_index {self.class_index} out of range")
        lookup = [{label: k for k, label in enumerate(a.domain)} for a in attrs]
        object.__setattr__(self, "_lookup", lookup)

    @property
    def names(self) -> list[str]:
        return [a.name for a in self.attributes]

    @property
    def cardinalities(self) -> list[int]:
        return [a.cardinality for a in self.attributes]

    @property
    def class_attribute(self) -> Attribute:
        return self.attributes[self.class_index]

    @property
    def class_cardinality(self) -> int:
        return self.attributes[self.class_index].cardinality

    @property
    def feature_indices(self) -> list[int]:
        """Indices of every non-class attribute, in schema order."""
        return [k for k in range(len(self.attributes)) if k != self.class_index]

    def index_of(self, name: str) -> int:
        for k, a in enumerate(self.attributes):
            if a.name == name:
                return k
        raise DatasetError(f"unknown attribute {name!r}")

    def cardinality(self, index: int) -> int:
        return self.attributes[index].cardinality

    def encode(self, index: int, label: str) -> int:
        try:
            return self._lookup[index][label]
        except KeyError:
            raise UnseenValueError(
                f"value {label!r} not in domain of attribute {self.attributes[index].name!r}"
            ) from None


@dataclass(frozen=True)
class Dataset:
    """Immutable N x (n+1) matrix of domain indices, class column included."""

    schema: Schema
    rows: np.ndarray

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.int64)
        if rows.ndim != 2 or rows.shape[1] != len(self.schema.attributes):
            raise DatasetError(
                f"rows must have shape (N, {len(self.schema.attributes)}), got {rows.shape}"
            )
        if rows.shape[0] < 1:
            raise DatasetError("dataset has zero rows")
        card = np.asarray(self.schema.cardinalities)
        if rows.min() < 0 or np.any(rows >= card):
            raise DatasetError("row cell outside its attribute domain")
        rows = rows.copy()
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    @property
    def N(self) -> int:
        return self.rows.shape[0]

    def column(self, index: int) -> np.ndarray:
        return self.rows[:, index]

    def class_column(self) -> np.ndarray:
        return self.rows[:, self.schema.class_index]

    def check_schema(self, schema: Schema) -> None:
        if schema != self.schema:
            raise SchemaMismatchError("dataset schema differs from the expected schema")


@dataclass(frozen=True)
class ContingencyTable:
    variables: tuple[int, ...]
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def joint_counts(dataset: Dataset, variables: Sequence[int]) -> ContingencyTable:
    """Count rows per value combination of ``variables`` (in the given order)."""
    variables = tuple(int(v) for v in variables)
    width = len(dataset.schema.attributes)
    if len(set(variables)) != len(variables):
        raise DatasetError(f"duplicate variable index in {variables}")
    for v in variables:
        if not 0 <= v < width:
            raise DatasetError(f"variable index {v} out of range")
    shape = tuple(dataset.schema.cardinality(v) for v in variables)
    if not variables:
        return ContingencyTable((), np.array(dataset.N, dtype=np.int64))
    flat = np.ravel_multi_index(tuple(dataset.rows[:, v] for v in variables), shape)
    counts = np.bincount(flat, minlength=int(np.prod(shape))).reshape(shape)
    return ContingencyTable(variables, counts.astype(np.int64))


def from_labels(
    header: Sequence[str],
    records: Iterable[Sequence[str]],
    class_column: str,
) -> Dataset:
    """Build a dataset from label records, inferring sorted domains."""
    header = list(header)
    if class_column not in header:
        raise DatasetError(f"class column {class_column!r} not found in header")
    records = [list(r) for r in records]
    if not records:
        raise DatasetError("zero rows remaining")
    domains = [sorted({r[k] for r in records}) for k in range(len(header))]
    schema = Schema(
        tuple(Attribute(name, tuple(dom)) for name, dom in zip(header, domains)),
        header.index(class_column),
    )
    return encode_records(schema, header, records)


def encode_records(
    schema: Schema, header: Sequence[str], records: Iterable[Sequence[str]]
) -> Dataset:
    """Encode label records against a fixed schema; columns are matched by name."""
    positions = []
    for name in schema.names:
        if name not in header:
            raise SchemaMismatchError(f"column {name!r} missing from input")
        positions.append(list(header).index(name))
    encoded = [
        [schema.encode(k, r[p]) for k, p in enumerate(positions)] for r in records
    ]
    if not encoded:
        raise DatasetError("zero rows remaining")
    return Dataset(schema, np.array(encoded, dtype=np.int64))


def read_csv_records(
    path, missing_policy: str = "drop-row", delimiter: str = ","
) -> tuple[list[str], list[list[str]]]:
    """Read a header plus label records, applying the missing-value policy."""
    if missing_policy not in MISSING_POLICIES:
        raise DatasetError(f"unknown missing policy {missing_policy!r}")
    if len(delimiter) != 1:
        raise DatasetError("delimiter must be a single character")
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh, delimiter=delimiter)
            header = next(reader, None)
            body = list(reader)
    except OSError as exc:
        raise DatasetError(f"cannot read {path}: {exc}") from exc
    if not header:
        raise DatasetError(f"{path}: header row absent")
    header = [h.strip() for h in header]
    records = []
    for lineno, row in enumerate(body, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise DatasetError(
                f"{path}:{lineno}: ragged row ({len(row)} fields, expected {len(header)})"
            )
        row = [cell.strip() for cell in row]
        if any(cell == "" for cell in row):
            if missing_policy == "error":
                raise DatasetError(f"{path}:{lineno}: missing value")
            continue
        records.append(row)
    return header, records


def load_csv(
    path,
    class_column: str,
    missing_policy: str = "drop-row",
    delimiter: str = ",",
    schema: Schema | None = None,
) -> Dataset:
    """Load a categorical CSV file.

    Domains are inferred as the sorted distinct labels of each column unless
    ``schema`` is given, in which case labels are encoded against it and any
    unseen label raises :class:`UnseenValueError`.
    """
    header, records = read_csv_records(path, missing_policy, delimiter)
    if class_column not in header:
        raise DatasetError(f"class column {class_column!r} not found in header")
    if not records:
        raise DatasetError("zero rows remaining")
    if schema is None:
        return from_labels(header, records, class_column)
    if schema.class_attribute.name != class_column:
        raise SchemaMismatchError(
            f"class column {class_column!r} differs from model class "
            f"{schema.class_attribute.name!r}"
        )
    return encode_records(schema, header, records)
