"""Rapidity scans and their CSV, JSON and gnuplot renderings."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import pathlib
from collections.abc import Sequence
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__, config
from .covariant_boost import Rapidity
from .entanglement_thermo import (
    Temperature,
    entropy_analytic,
    purity,
    rapidity_of,
    spatial_width,
    temperature_of,
)
from .errors import ConfigError, NonFiniteValueError
from .phase_space import uncertainty_products, wigner_radius

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("csv", "json")


@dataclass(frozen=True)
class ScanConfig:
    eta_min: float = 0.0
    eta_max: float = 3.0
    steps: int = 61
    n: int = 0
    output_format: str = "csv"
    emit_plot: bool = False

    def __post_init__(self):
        for name in ("eta_min", "eta_max"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ConfigError(name, f"must be finite, got {value}")
            if not 0.0 <= value <= config.MAX_SCAN_RAPIDITY:
                raise ConfigError(
                    name, f"must lie in [0, {config.MAX_SCAN_RAPIDITY}], got {value}"
                )
        if not self.eta_min < self.eta_max:
            raise ConfigError(
                "eta_min", f"must be below eta_max ({self.eta_min} >= {self.eta_max})"
            )
        if isinstance(self.steps, bool) or self.steps < 2:
            raise ConfigError("steps", f"need at least 2 steps, got {self.steps}")
        if isinstance(self.n, bool) or self.n < 0:
            raise ConfigError("n", f"oscillator index must be >= 0, got {self.n}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(
                "output_format",
                f"must be one of {', '.join(OUTPUT_FORMATS)}, got {self.output_format!r}",
            )
        if self.emit_plot and self.output_format != "csv":
            raise ConfigError("emit_plot", "plot scripts read CSV output")

    def etas(self) -> list[float]:
        """Uniform grid from eta_min to eta_max; rest (eta = 0) is always the first row."""
        step = (self.eta_max - self.eta_min) / (self.steps - 1)
        grid = [self.eta_min + i * step for i in range(self.steps - 1)]
        grid.append(self.eta_max)
        if grid[0] != 0.0:
            grid.insert(0, 0.0)
        return grid

    def describe(self) -> str:
        return (
            f"eta_min={self.eta_min:g} eta_max={self.eta_max:g} "
            f"steps={self.steps} n={self.n}"
        )


@dataclass
class ScanTable:
    """Ordered columns of (name, unit) and rows of finite reals."""

    generator: str
    columns: list[tuple[str, str]]
    rows: list[tuple[float, ...]] = field(default_factory=list)
    metadata: dict[str, str] = field(default_factory=dict)
    # x column followed by the y columns the plot script draws
    plot: tuple[str, ...] = ()

    def __post_init__(self):
        names = self.names
        for column in self.plot:
            if column not in names:
                raise ConfigError("plot", f"no column named {column!r}")

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.columns]

    def append(self, *values: float) -> None:
        if len(values) != len(self.columns):
            raise ValueError(
                f"row has {len(values)} entries, table has {len(self.columns)} columns"
            )
        row = tuple(float(v) for v in values)
        if not all(math.isfinite(v) for v in row):
            raise NonFiniteValueError(row)
        self.rows.append(row)

    def column(self, name: str) -> np.ndarray:
        index = self.names.index(name)
        return np.array([row[index] for row in self.rows])

    def header_lines(self) -> list[str]:
        units = ", ".join(f"{name} [{unit}]" for name, unit in self.columns)
        lines = [f"# generator: covosc {self.generator}", f"# version: {__version__}"]
        lines += [f"# {key}: {value}" for key, value in self.metadata.items()]
        lines.append(f"# units: {units}")
        return lines

    def to_csv(self) -> str:
        fmt = config.CSV_FLOAT_FORMAT
        buffer = io.StringIO()
        buffer.write("\n".join(self.header_lines()) + "\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.names)
        writer.writerows([format(v, fmt) for v in row] for row in self.rows)
        return buffer.getvalue()

    def to_json(self) -> str:
        payload = {
            "generator": f"covosc {self.generator}",
            "version": __version__,
            "metadata": self.metadata,
            "columns": [{"name": name, "unit": unit} for name, unit in self.columns],
            "rows": [list(row) for row in self.rows],
        }
        return json.dumps(payload, indent=2) + "\n"

    def render(self, output_format: str) -> str:
        return self.to_json() if output_format == "json" else self.to_csv()

    def gnuplot_script(self, data_path: str) -> str:
        """gnuplot commands drawing the plot columns from the CSV at ``data_path``."""
        names = self.names
        x, *ys = self.plot or (names[0], *names[1:])
        x_index = names.index(x) + 1
        units = dict(self.columns)
        plots = ", \\\n     ".join(
            f'"{data_path}" using {x_index}:{names.index(y) + 1} with lines title "{y}"'
            for y in ys
        )
        return (
            f"# covosc {self.generator}\n"
            'set datafile separator ","\n'
            'set datafile commentschars "#"\n'
            "set key autotitle columnhead\n"
            f'set xlabel "{x} [{units[x]}]"\n'
            f"plot {plots}\n"
        )

    def write(self, out: pathlib.Path, output_format: str, emit_plot: bool) -> list[pathlib.Path]:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(self.render(output_format), encoding="utf-8")
        written = [out]
        if emit_plot:
            script = out.with_name(out.name + ".gp")
            script.write_text(self.gnuplot_script(out.name), encoding="utf-8")
            written.append(script)
        logger.info("wrote %s", ", ".join(str(p) for p in written))
        return written


def _new_table(
    generator: str,
    cfg: ScanConfig,
    columns: Sequence[tuple[str, str]],
    plot: tuple[str, ...],
) -> ScanTable:
    return ScanTable(
        generator=generator,
        columns=list(columns),
        metadata={
            "parameters": cfg.describe(),
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        },
        plot=plot,
    )


def scan_temperature(cfg: ScanConfig) -> ScanTable:
    """Hadronic temperature against speed: (eta, beta, beta^2, T)."""
    table = _new_table(
        "scan-temperature",
        cfg,
        [
            ("eta", "1"),
            ("beta", "c"),
            ("beta_squared", "1"),
            ("T", "hbar omega/k_B"),
        ],
        plot=("beta_squared", "T"),
    )
    for eta in cfg.etas():
        beta = math.tanh(eta)
        table.append(eta, beta, beta * beta, temperature_of(eta).value)
    return table


def scan_phase_transition(cfg: ScanConfig) -> ScanTable:
    """beta^2 against T on a uniform temperature grid spanning the rapidity range."""
    table = _new_table(
        "scan-phase-transition",
        cfg,
        [("T", "hbar omega/k_B"), ("beta_squared", "1"), ("eta", "1")],
        plot=("T", "beta_squared"),
    )
    t_min = temperature_of(cfg.eta_min).value
    t_max = temperature_of(cfg.eta_max).value
    step = (t_max - t_min) / (cfg.steps - 1)
    temperatures = [t_min + i * step for i in range(cfg.steps - 1)] + [t_max]
    if temperatures[0] != 0.0:
        temperatures.insert(0, 0.0)
    for value in temperatures:
        T = Temperature(value)
        beta_squared = 0.0 if T.is_zero else math.exp(-1.0 / value)
        table.append(value, beta_squared, rapidity_of(T).eta)
    return table


def scan_observables(cfg: ScanConfig) -> ScanTable:
    """Entropy, purity, widths and uncertainty products along the rapidity grid."""
    table = _new_table(
        "scan-observables",
        cfg,
        [
            ("eta", "1"),
            ("entropy", "k_B"),
            ("purity", "1"),
            ("spatial_width", "rest width"),
            ("wigner_radius", "rest radius"),
            ("uncertainty_product_u", "hbar^2"),
            ("uncertainty_product_v", "hbar^2"),
        ],
        plot=("eta", "entropy", "purity", "spatial_width"),
    )
    for eta in cfg.etas():
        r = Rapidity(eta)
        product_u, product_v = uncertainty_products(r)
        table.append(
            eta,
            entropy_analytic(cfg.n, r),
            purity(cfg.n, r),
            spatial_width(r),
            wigner_radius(r),
            product_u,
            product_v,
        )
        logger.debug("observables row eta=%g done", eta)
    return table


def scan_wigner(cfg: ScanConfig) -> ScanTable:
    """Wigner radius against speed and temperature: (eta, beta, T, wigner_radius)."""
    table = _new_table(
        "scan-wigner",
        cfg,
        [
            ("eta", "1"),
            ("beta", "c"),
            ("T", "hbar omega/k_B"),
            ("wigner_radius", "rest radius"),
        ],
        plot=("beta", "wigner_radius"),
    )
    for eta in cfg.etas():
        r = Rapidity(eta)
        table.append(eta, r.beta, temperature_of(r).value, wigner_radius(r))
    return table


SCANS = {
    "scan-temperature": scan_temperature,
    "scan-phase-transition": scan_phase_transition,
    "scan-observables": scan_observables,
    "scan-wigner": scan_wigner,
}
