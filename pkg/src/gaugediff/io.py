"""File formats: sample CSVs, experiment configs and run reports.

CSV files are comma separated with a header row, UTF-8, LF line endings and
floats written with ``repr`` (shortest round-trip form), so reading a file
back gives bit-identical values.

Experiment configs are flat ``key = value`` text, one experiment per file,
``#`` starting a comment.  A JSON object with the same keys is accepted as
well.  Durations are counted in steps, never in time units::

    family = B
    lambda = 1
    functional = abs_order_stats
    dt = 0.001
    total_steps = 200000
    burn_in_steps = 10000
    thinning_stride = 100
    seed = 7
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
import platform
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .gauge import CoxeterGauge, GraphGauge, MassGauge, RankGauge
from .groups import ENUMERATION_LIMIT, GroupFamily
from .sim import FUNCTIONAL_KINDS, FunctionalSpec, SimConfig

__all__ = [
    "ConfigError",
    "ModelSpec",
    "ExperimentConfig",
    "format_float",
    "parse_vector",
    "parse_matrix",
    "write_csv",
    "read_csv",
    "parse_config",
    "load_config",
    "write_report",
    "read_report",
    "versions",
    "read_numeric_csv",
    "make_report",
    "dumps_csv",
]

MAX_DIMENSION = 12


class ConfigError(ValueError):
    """Malformed config or model specification (CLI exit code 2)."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None,
                 source: str = "<config>"):
        where = source
        if line is not None:
            where += f":{line}"
        if field is not None:
            where += f" [{field}]"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.field = field


def format_float(v) -> str:
    return repr(float(v))


def parse_vector(text: str) -> list[float]:
    """``"1, 2,3"`` -> ``[1.0, 2.0, 3.0]``."""
    parts = [p.strip() for p in str(text).strip().strip("()[]").split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValueError(f"expected a comma-separated list of numbers, got {text!r}")
    out = [float(p) for p in parts]
    if not all(math.isfinite(v) for v in out):
        raise ValueError(f"non-finite entry in {text!r}")
    return out


def parse_matrix(text: str) -> list[list[float]]:
    """Rows separated by ``;``, entries by ``,``."""
    return [parse_vector(row) for row in str(text).split(";") if row.strip()]


# ---------------------------------------------------------------------------
# CSV


def _cell(v) -> str:
    if isinstance(v, (float, np.floating)):
        return format_float(v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def write_csv(target, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Write ``rows`` under ``header`` to a path or an open text stream."""
    def emit(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(v) for v in row])

    if hasattr(target, "write"):
        emit(target)
    else:
        with open(target, "w", newline="", encoding="utf-8") as fh:
            emit(fh)


def read_csv(source) -> tuple[list[str], list[list[str]]]:
    """Header and raw string rows of a CSV file (path or text stream)."""
    if hasattr(source, "read"):
        rows = list(csv.reader(source))
    else:
        with open(source, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    if not rows:
        raise ConfigError("empty CSV file", source=str(source))
    return rows[0], rows[1:]


def read_numeric_csv(source) -> tuple[list[str], np.ndarray]:
    header, rows = read_csv(source)
    return header, np.array([[float(v) for v in r] for r in rows], dtype=float).reshape(len(rows), len(header))


# ---------------------------------------------------------------------------
# Model and experiment configs

_FAMILIES = ("A", "B", "D", "rank", "graph", "mass", "bangbang")


@dataclass(frozen=True)
class ModelSpec:
    """Family name plus its parameter.

    ``A`` with ``delta`` is the rank model; ``A`` with ``lambda`` a Coxeter
    gauge on the centered hyperplane.  ``bangbang`` with ``alpha`` is ``B``
    with ``lambda = (alpha,)``.
    """

    family: str
    lam: tuple | None = None
    delta: tuple | None = None
    beta: tuple | None = None
    masses: tuple | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}; expected one of {_FAMILIES}", field="family")
        need = {
            "B": "lam", "D": "lam", "bangbang": "lam", "rank": "delta",
            "graph": "beta", "mass": "masses",
        }.get(self.family)
        if self.family == "A":
            if (self.lam is None) == (self.delta is None):
                raise ConfigError("family A needs exactly one of lambda or delta", field="family")
        elif getattr(self, need) is None:
            raise ConfigError(f"family {self.family} needs {need.replace('lam', 'lambda')}", field=need)
        n = self.n
        if n > MAX_DIMENSION:
            raise ConfigError(f"dimension {n} exceeds the guard {MAX_DIMENSION}", field="family")
        if self.family in ("A", "B", "D", "bangbang") and self.lam is not None:
            fam = GroupFamily("B" if self.family == "bangbang" else self.family, n)
            if fam.order > ENUMERATION_LIMIT:
                raise ConfigError(
                    f"group {fam} has order {fam.order} > {ENUMERATION_LIMIT}", field="lambda"
                )

    @property
    def n(self) -> int:
        for v in (self.lam, self.delta, self.masses):
            if v is not None:
                return len(v)
        return len(self.beta)

    @property
    def parameter(self) -> list[float]:
        for v in (self.lam, self.delta, self.masses):
            if v is not None:
                return list(v)
        return [x for row in self.beta for x in row]

    def build(self):
        """Instantiate the gauge model."""
        f = self.family
        if f in ("B", "D") or (f == "A" and self.lam is not None):
            return CoxeterGauge.from_spec(f, self.lam)
        if f == "bangbang":
            return CoxeterGauge.from_spec("B", self.lam)
        if f in ("A", "rank"):
            return RankGauge(self.delta)
        if f == "graph":
            return GraphGauge(np.array(self.beta, dtype=float))
        return MassGauge(self.masses)

    def to_dict(self) -> dict:
        d = {"family": self.family}
        if self.lam is not None:
            d["lambda"] = list(self.lam)
        if self.delta is not None:
            d["delta"] = list(self.delta)
        if self.beta is not None:
            d["beta"] = [list(r) for r in self.beta]
        if self.masses is not None:
            d["masses"] = list(self.masses)
        return d


def _auto_or_int(v):
    if isinstance(v, str) and v.strip().lower() in ("auto", "none"):
        return None
    return _int(v)


def _int(v):
    if isinstance(v, bool):
        raise ValueError("expected an integer")
    if isinstance(v, (int, np.integer)):
        return int(v)
    f = float(v)
    if not f.is_integer():
        raise ValueError(f"expected an integer, got {v!r}")
    return int(f)


def _vector(v):
    if isinstance(v, (list, tuple)):
        return [float(x) for x in v]
    return parse_vector(v)


def _matrix(v):
    if isinstance(v, (list, tuple)):
        return [[float(x) for x in row] for row in v]
    return parse_matrix(v)


def _initial(v):
    if isinstance(v, str) and v.strip() == "origin":
        return "origin"
    return _vector(v)


def _names(v):
    if isinstance(v, (list, tuple)):
        return [str(x) for x in v]
    return [s.strip() for s in str(v).split(",") if s.strip()]


_FIELDS = {
    "family": str,
    "lambda": _vector,
    "alpha": float,
    "delta": _vector,
    "beta": _matrix,
    "masses": _vector,
    "functional": str,
    "particle": _int,
    "dt": float,
    "total_steps": _int,
    "burn_in_steps": _int,
    "thinning_stride": _auto_or_int,
    "seed": _int,
    "initial_state": _initial,
    "workers": _int,
    "chains": _int,
    "output_dir": str,
    "tests": _names,
}


@dataclass
class ExperimentConfig:
    model: ModelSpec
    sim: SimConfig | None
    functional: FunctionalSpec | None
    tests: list[str] = field(default_factory=list)
    output_dir: str = "."

    def to_dict(self) -> dict:
        d = {"model": self.model.to_dict(), "tests": self.tests, "output_dir": self.output_dir}
        if self.sim is not None:
            d["sim"] = asdict(self.sim)
        if self.functional is not None:
            d["functional"] = self.functional.kind
            d["particle"] = self.functional.particle + 1
        return d


def _raw_pairs(text: str, source: str) -> list[tuple[str, object, int | None]]:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc.msg}", line=exc.lineno, source=source) from None
        if not isinstance(obj, dict):
            raise ConfigError("JSON config must be an object", source=source)
        return [(k, v, None) for k, v in obj.items()]
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", line=lineno, source=source)
        key, value = (s.strip() for s in line.split("=", 1))
        if not key or not value:
            raise ConfigError("empty key or value", line=lineno, field=key or None, source=source)
        pairs.append((key, value, lineno))
    return pairs


def parse_config(text: str, source: str = "<config>", overrides: dict | None = None) -> ExperimentConfig:
    """Parse key-value or JSON config text.

    ``overrides`` (e.g. a seed given on the command line) replace or add
    fields before validation; ``None`` values are ignored.

    Raises
    ------
    ConfigError
        With the offending line (key-value form) and field name.
    """
    values: dict = {}
    lines: dict = {}
    for key, raw, lineno in _raw_pairs(text, source):
        if key not in _FIELDS:
            raise ConfigError(f"unknown field; known fields are {sorted(_FIELDS)}", lineno, key, source)
        if key in values:
            raise ConfigError("duplicate field", lineno, key, source)
        try:
            values[key] = _FIELDS[key](raw)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc), lineno, key, source) from None
        lines[key] = lineno
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = _FIELDS[key](value)
            lines[key] = None

    def fail(msg, key):
        raise ConfigError(msg, lines.get(key), key, source)

    if "family" not in values:
        fail("missing required field", "family")
    family = values["family"]
    lam = values.get("lambda")
    if family == "bangbang":
        if "alpha" not in values:
            fail("bangbang needs alpha", "alpha")
        lam = [values["alpha"]]
    beta = values.get("beta")
    try:
        model = ModelSpec(
            family,
            lam=None if lam is None else tuple(lam),
            delta=None if "delta" not in values else tuple(values["delta"]),
            beta=None if beta is None else tuple(tuple(r) for r in beta),
            masses=None if "masses" not in values else tuple(values["masses"]),
        )
        model.build()
    except ConfigError as exc:
        fail(str(exc).split(": ", 1)[-1], exc.field or "family")
    except ValueError as exc:
        fail(str(exc), "family")

    sim = fn = None
    sim_keys = {"dt", "total_steps", "burn_in_steps", "thinning_stride", "seed",
                "initial_state", "workers", "chains"}
    if sim_keys & values.keys() or "functional" in values:
        if "seed" not in values:
            fail("simulation configs require an explicit seed", "seed")
        kw = {k: values[k] for k in sim_keys if k in values}
        try:
            sim = SimConfig(**kw)
        except ValueError as exc:
            bad = next((k for k in ("dt", "total_steps", "burn_in_steps", "thinning_stride",
                                    "workers", "chains") if k in str(exc)), "total_steps")
            fail(str(exc), bad)
        kind = values.get("functional")
        if kind is None:
            fail("missing required field", "functional")
        if kind not in FUNCTIONAL_KINDS:
            fail(f"unknown functional; expected one of {FUNCTIONAL_KINDS}", "functional")
        particle = values.get("particle", 1)
        if not 1 <= particle <= model.n:
            fail(f"particle must be in 1..{model.n}", "particle")
        fn = FunctionalSpec(kind, particle - 1)
    return ExperimentConfig(model, sim, fn, values.get("tests", []), values.get("output_dir", "."))


def load_config(path, overrides: dict | None = None) -> ExperimentConfig:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", source=str(p)) from None
    return parse_config(text, source=str(p), overrides=overrides)


# ---------------------------------------------------------------------------
# Reports


def versions() -> dict:
    import scipy

    from . import __version__

    return {
        "gaugediff": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def make_report(model, config, tests, wall_time_s: float, **extra) -> dict:
    report = {
        "model": model,
        "config": config,
        "tests": [t.to_dict() if hasattr(t, "to_dict") else t for t in tests],
        "wall_time_s": float(wall_time_s),
        "versions": versions(),
    }
    report.update(extra)
    return _jsonable(report)


def write_report(target, report: dict) -> None:
    text = json.dumps(_jsonable(report), indent=2, sort_keys=False) + "\n"
    if hasattr(target, "write"):
        target.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")


def read_report(source) -> dict:
    text = source.read() if hasattr(source, "read") else Path(source).read_text(encoding="utf-8")
    return json.loads(text)


def dumps_csv(header, rows) -> str:
    buf = _io.StringIO()
    write_csv(buf, header, rows)
    return buf.getvalue()
