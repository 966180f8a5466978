"""Uniform tensor-product grids of sampled values, with a small CSV format.

CSV layout::

    # axis,<name>,<start>,<stop>,<count>     (one line per axis)
    # spacing,<h0>,<h1>,...
    # tag,<closed-form tag or empty>
    v,v,v,...                                (row-major, last axis along a row)
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

__all__ = ["SampledField", "uniform_axis"]


def uniform_axis(start: float, stop: float, count: int) -> np.ndarray:
    return np.linspace(start, stop, count)


@dataclass
class SampledField:
    axes: Tuple[np.ndarray, ...]
    values: np.ndarray
    names: Tuple[str, ...] = ()
    tag: Optional[str] = None

    def __post_init__(self):
        self.axes = tuple(np.asarray(a, dtype=float) for a in self.axes)
        self.values = np.asarray(self.values)
        if self.values.shape != tuple(len(a) for a in self.axes):
            raise ValueError(
                f"value grid shape {self.values.shape} does not match axes "
                f"{tuple(len(a) for a in self.axes)}"
            )
        for a in self.axes:
            d = np.diff(a)
            if d.size and not np.allclose(d, d[0], rtol=1e-9, atol=0.0):
                raise ValueError("grid spacing must be uniform per axis")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("sampled values must be finite")
        if not self.names:
            self.names = tuple(f"x{i}" for i in range(len(self.axes)))

    @classmethod
    def from_function(
        cls,
        f: Callable,
        ranges: Sequence[Tuple[float, float]],
        counts: Sequence[int],
        names: Sequence[str] = (),
        tag: Optional[str] = None,
    ) -> "SampledField":
        axes = [uniform_axis(a, b, n) for (a, b), n in zip(ranges, counts)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return cls(tuple(axes), f(*mesh), tuple(names), tag)

    @property
    def ndim(self) -> int:
        return len(self.axes)

    @property
    def spacing(self) -> Tuple[float, ...]:
        return tuple(float(a[1] - a[0]) if len(a) > 1 else 0.0 for a in self.axes)

    def mesh(self):
        return np.meshgrid(*self.axes, indexing="ij")

    def nearest_index(self, point) -> Tuple[int, ...]:
        return tuple(int(np.argmin(np.abs(a - p))) for a, p in zip(self.axes, point))

    def contains_ball(self, center, radius) -> bool:
        return all(a[0] <= c - radius and c + radius <= a[-1] for a, c in zip(self.axes, center))

    # -- CSV ---------------------------------------------------------------
    def to_csv(self, path) -> None:
        lines = []
        for name, a in zip(self.names, self.axes):
            lines.append(f"# axis,{name},{float(a[0])!r},{float(a[-1])!r},{len(a)}")
        lines.append("# spacing," + ",".join(repr(float(h)) for h in self.spacing))
        lines.append(f"# tag,{self.tag or ''}")
        flat = self.values.reshape(-1, self.values.shape[-1])
        for row in flat:
            lines.append(",".join(_fmt(v) for v in row))
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def from_csv(cls, path) -> "SampledField":
        axes, names, tag, rows = [], [], None, []
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    parts = line[1:].strip().split(",")
                    if parts[0] == "axis":
                        names.append(parts[1])
                        axes.append(uniform_axis(float(parts[2]), float(parts[3]), int(parts[4])))
                    elif parts[0] == "tag":
                        tag = parts[1] or None
                    continue
                rows.append([complex(v) if "j" in v else float(v) for v in line.split(",")])
        vals = np.array(rows)
        return cls(tuple(axes), vals.reshape([len(a) for a in axes]), tuple(names), tag)


def _fmt(v) -> str:
    if isinstance(v, (complex, np.complexfloating)):
        return repr(complex(v)).strip("()")
    return repr(float(v))
