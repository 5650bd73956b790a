"""Columnar time-series record of a closed-loop run, with CSV round-trip.

The CSV schema is fixed and versioned: one `# softbend-twin v1` comment
line, one column-name line, then rows in fixed 6-decimal notation.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

CSV_VERSION_LINE = "# softbend-twin v1"

COLUMNS = (
    "t_s",
    "desired_deg",
    "angle_true_deg",
    "angle_meas_deg",
    "pressure_kpa",
    "pressure_meas_kpa",
    "p_pred_kpa",
    "e_p_kpa",
    "e_alpha_deg",
    "valve_opening",
    "sma_power",
    "sma_temp_c",
    "sma_strain",
)


@dataclass
class RunLog:
    data: np.ndarray  # shape (n_samples, len(COLUMNS))

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=float)
        if self.data.ndim != 2 or self.data.shape[1] != len(COLUMNS):
            raise DomainError(f"RunLog data must be (n, {len(COLUMNS)})")
        t = self.data[:, 0]
        if len(t) > 1:
            dt = np.diff(t)
            if not (dt > 0).all():
                raise DomainError("RunLog times must be strictly increasing")
            if not np.allclose(dt, dt[0], rtol=0, atol=1e-9):
                raise DomainError("RunLog must have constant sample spacing")

    def __len__(self):
        return self.data.shape[0]

    def column(self, name):
        return self.data[:, COLUMNS.index(name)]

    @property
    def t_s(self):
        return self.column("t_s")

    @property
    def duration_s(self):
        t = self.t_s
        if len(t) < 2:
            return 0.0
        return float(t[-1] - t[0] + (t[1] - t[0]))


class RunLogBuilder:
    def __init__(self):
        self._rows = []

    def add(self, **kwargs):
        self._rows.append([float(kwargs[c]) for c in COLUMNS])

    def build(self):
        if not self._rows:
            raise DomainError("empty run log")
        return RunLog(np.array(self._rows, dtype=float))


def write_csv(log, path):
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(CSV_VERSION_LINE + "\n")
        f.write(",".join(COLUMNS) + "\n")
        for row in log.data:
            f.write(",".join(f"{v:.6f}" for v in row) + "\n")


def read_csv(path):
    with open(path, "r", encoding="ascii") as f:
        first = f.readline().rstrip("\n")
        if first != CSV_VERSION_LINE:
            raise DomainError(f"unrecognized log file version line: {first!r}")
        names = tuple(f.readline().rstrip("\n").split(","))
        if names != COLUMNS:
            raise DomainError(f"unexpected CSV columns: {names}")
        rows = [[float(v) for v in line.rstrip("\n").split(",")] for line in f if line.strip()]
    if not rows:
        raise DomainError(f"no samples in {path}")
    return RunLog(np.array(rows, dtype=float))
