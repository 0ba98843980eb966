"""Field-grid container and deterministic CSV/JSON serialization.

CSV layout: one '#'-prefixed metadata line (a JSON document with the
axis descriptors and the run metadata), one header row naming the axis
columns followed by ``re,im,modulus,phase``, then one data row per grid
point in row-major axis order. All numbers are printed with %.17g,
which round-trips IEEE doubles exactly and keeps byte-identical output
for identical inputs. JSON files carry the same information as a single
document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

FORMAT_VERSION = 1


@dataclass(frozen=True)
class AxisSpec:
    """Uniformly sampled axis: name, bounds, sample count (>= 2)."""

    name: str
    minimum: float
    maximum: float
    count: int

    def __post_init__(self):
        if self.count < 2:
            raise ConfigError(f"axis {self.name!r}: count must be >= 2, got {self.count}")
        if not np.isfinite(self.minimum) or not np.isfinite(self.maximum):
            raise ConfigError(f"axis {self.name!r}: bounds must be finite")
        if not self.minimum < self.maximum:
            raise ConfigError(
                f"axis {self.name!r}: min must be < max, got ({self.minimum}, {self.maximum})"
            )

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.minimum, self.maximum, self.count)

    def to_dict(self) -> dict:
        return {"name": self.name, "min": self.minimum, "max": self.maximum, "count": self.count}

    @classmethod
    def from_dict(cls, d: dict) -> "AxisSpec":
        try:
            return cls(str(d["name"]), float(d["min"]), float(d["max"]), int(d["count"]))
        except KeyError as missing:
            raise ConfigError(f"axis descriptor missing field {missing}") from None


@dataclass(frozen=True, eq=False)
class FieldGrid:
    """Complex amplitudes on a rectangular lattice, plus run metadata."""

    axes: tuple
    values: np.ndarray
    metadata: dict

    def __post_init__(self):
        shape = tuple(ax.count for ax in self.axes)
        values = np.asarray(self.values, dtype=complex)
        if values.shape != shape:
            if values.size != int(np.prod(shape)):
                raise ValueError(
                    f"values size {values.size} does not match axis counts {shape}"
                )
            values = values.reshape(shape)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "axes", tuple(self.axes))

    def coordinate_columns(self) -> list:
        """Row-major flattened coordinate column per axis."""
        grids = np.meshgrid(*(ax.values for ax in self.axes), indexing="ij")
        return [g.ravel() for g in grids]


def _meta_doc(grid: FieldGrid) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "axes": [ax.to_dict() for ax in grid.axes],
        "metadata": grid.metadata,
    }


def save_csv(grid: FieldGrid, path) -> None:
    flat = grid.values.ravel()
    columns = grid.coordinate_columns() + [
        flat.real,
        flat.imag,
        np.abs(flat),
        np.angle(flat),
    ]
    header = (
        "# " + json.dumps(_meta_doc(grid), sort_keys=True) + "\n"
        + ",".join([ax.name for ax in grid.axes] + ["re", "im", "modulus", "phase"])
    )
    np.savetxt(path, np.column_stack(columns), fmt="%.17g", delimiter=",",
               header=header, comments="")


def load_csv(path) -> FieldGrid:
    with open(path, "r", encoding="utf-8") as fh:
        meta_line = fh.readline()
        if not meta_line.startswith("#"):
            raise ConfigError(f"{path}: missing metadata line")
        doc = json.loads(meta_line.lstrip("#").strip())
        fh.readline()  # column header
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    axes = tuple(AxisSpec.from_dict(d) for d in doc["axes"])
    n_ax = len(axes)
    values = data[:, n_ax] + 1j * data[:, n_ax + 1]
    return FieldGrid(axes=axes, values=values, metadata=doc.get("metadata", {}))


def save_json(grid: FieldGrid, path) -> None:
    doc = _meta_doc(grid)
    flat = grid.values.ravel()
    doc["values"] = {"re": flat.real.tolist(), "im": flat.imag.tolist()}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True, indent=1)
        fh.write("\n")


def load_json(path) -> FieldGrid:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    axes = tuple(AxisSpec.from_dict(d) for d in doc["axes"])
    values = np.asarray(doc["values"]["re"]) + 1j * np.asarray(doc["values"]["im"])
    return FieldGrid(axes=axes, values=values, metadata=doc.get("metadata", {}))


def save(grid: FieldGrid, path, fmt: str) -> None:
    if fmt == "csv":
        save_csv(grid, path)
    elif fmt == "json":
        save_json(grid, path)
    else:
        raise ConfigError(f"unknown output format {fmt!r}; choose csv or json")


def load(path, fmt: str = None) -> FieldGrid:
    if fmt is None:
        fmt = "json" if str(path).endswith(".json") else "csv"
    return load_json(path) if fmt == "json" else load_csv(path)
