"""Plain-text inputs: run configuration, gamma_k rows and region catalogs.

All three formats are line oriented; ``#`` starts a comment and blank lines
are ignored.  Every parse error carries the file name and line number.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path

from .errors import ConfigError, DomainViolation
from .zeta_bounds import TABLE2, Table2Row
from .zfr import DEFAULT_CONFIG, RegionSpec, ZfrConfig, default_regions

DEFAULT_LOG_T_GRID = ("10", "46.2", "46.3", "100", "170", "171", "300", "1000", "10000", "100000", "532000", "533000", "1000000")


@dataclass
class RunConfig:
    precision: int = 256
    confirm_precision: int = 512
    seed: int = 20240601
    samples: int = 500
    oracle_cap: int = 10 ** 8
    table2_path: str | None = None
    regions_path: str | None = None
    log_t_grid: tuple = DEFAULT_LOG_T_GRID
    zfr: ZfrConfig = DEFAULT_CONFIG
    phi: dict = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        if self.precision < 64:
            raise ConfigError("precision must be at least 64 bits")
        if self.confirm_precision < self.precision:
            raise ConfigError("confirm precision must be at least the primary precision")
        if self.samples < 0:
            raise ConfigError("samples must be non-negative")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        return self

    def as_dict(self) -> dict:
        """Stable, JSON-friendly view used in report headers."""
        out = {
            "precision": self.precision,
            "confirm_precision": self.confirm_precision,
            "seed": self.seed,
            "samples": self.samples,
            "oracle_cap": self.oracle_cap,
            "table2_path": self.table2_path,
            "regions_path": self.regions_path,
            "log_t_grid": list(self.log_t_grid),
            "phi": {str(k): str(v) for k, v in sorted(self.phi.items())},
        }
        zfr = {f.name: str(getattr(self.zfr, f.name)) for f in fields(self.zfr) if f.name != "poly"}
        zfr.update({f.name: str(getattr(self.zfr.poly, f.name)) for f in fields(self.zfr.poly)})
        out["zfr"] = dict(sorted(zfr.items()))
        return out


_INT_KEYS = {"precision", "confirm_precision", "seed", "samples", "oracle_cap"}
_ZFR_KEYS = {f.name for f in fields(ZfrConfig) if f.name not in ("poly", "eta0")} | {"D", "b0", "b1", "b", "log_weight"}


def _number_text(text: str, where: str) -> str:
    try:
        Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{where}: not a number: {text!r}") from None
    return text


def parse_log_t_grid(text: str, where: str) -> tuple:
    values = tuple(_number_text(v.strip(), where) for v in text.split(",") if v.strip())
    if not values or any(Fraction(v) < 1 for v in values):
        raise ConfigError(f"{where}: log t grid needs values >= 1")
    return values


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None


def parse_run_config(text: str, source: str = "<config>", base: RunConfig | None = None) -> RunConfig:
    config = base or RunConfig()
    zfr_values = {}
    for number, line in _lines(text):
        where = f"{source}:{number}"
        if "=" not in line:
            raise ConfigError(f"{where}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not value:
            raise ConfigError(f"{where}: empty value for {key!r}")
        if key in _INT_KEYS:
            try:
                setattr(config, key, int(value))
            except ValueError:
                raise ConfigError(f"{where}: {key} must be an integer") from None
        elif key == "table2":
            config.table2_path = value
        elif key == "regions":
            config.regions_path = value
        elif key == "log_t_grid":
            config.log_t_grid = parse_log_t_grid(value, where)
        elif key.startswith("phi."):
            try:
                k = int(key[4:])
                config.phi[k] = Fraction(value)
            except (ValueError, ZeroDivisionError):
                raise ConfigError(f"{where}: bad phi override {line!r}") from None
        elif key in _ZFR_KEYS:
            zfr_values[key] = int(value) if key == "D" else _number_text(value, where)
        else:
            raise ConfigError(f"{where}: unknown key {key!r}")
    if zfr_values:
        config.zfr = config.zfr.with_overrides(**zfr_values)
    return config.validate()


def load_run_config(path) -> RunConfig:
    return parse_run_config(_read(path), str(path))


def parse_table2(text: str, source: str = "<table2>", phi: dict | None = None) -> tuple:
    """Rows ``k eta3 h0 h1 h2 h3 gamma [alpha beta]``; values may be decimals or ``e``."""
    rows = []
    seen = set()
    for number, line in _lines(text):
        where = f"{source}:{number}"
        parts = line.replace(",", " ").split()
        if len(parts) not in (7, 9):
            raise ConfigError(f"{where}: expected 7 or 9 fields, got {len(parts)}")
        try:
            k = int(parts[0])
        except ValueError:
            raise ConfigError(f"{where}: k must be an integer") from None
        if not 4 <= k <= 9:
            raise ConfigError(f"{where}: tabulated rows cover 4 <= k <= 9")
        if k in seen:
            raise ConfigError(f"{where}: duplicate row k={k}")
        seen.add(k)
        values = [v if v == "e" else _number_text(v, where) for v in parts[1:]]
        extra = values[6:] if len(values) == 8 else [None, None]
        rows.append(Table2Row(k, *values[:6], *extra, phi=(phi or {}).get(k)))
    if not rows:
        raise ConfigError(f"{source}: no rows")
    return tuple(rows)


def load_table2(path, phi: dict | None = None) -> tuple:
    return parse_table2(_read(path), str(path), phi)


def default_table2(phi: dict | None = None) -> tuple:
    if not phi:
        return TABLE2
    return tuple(Table2Row(r.k, r.eta3, r.h0, r.h1, r.h2, r.h3, r.gamma, r.alpha, r.beta, phi.get(r.k)) for r in TABLE2)


def parse_region_catalog(text: str, source: str = "<regions>") -> tuple:
    """Rows ``name, formula_id, p1;p2;..., valid_from``."""
    regions = []
    for number, line in _lines(text):
        where = f"{source}:{number}"
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 4:
            raise ConfigError(f"{where}: expected 'name, formula_id, p1;p2;..., valid_from'")
        name, formula, params, valid_from = parts
        params = tuple(_number_text(p.strip(), where) for p in params.split(";") if p.strip())
        _number_text(valid_from, where)
        try:
            regions.append(RegionSpec(name, formula, params, valid_from))
        except DomainViolation as exc:
            raise ConfigError(f"{where}: {exc}") from None
    if not regions:
        raise ConfigError(f"{source}: no regions")
    if len({r.name for r in regions}) != len(regions):
        raise ConfigError(f"{source}: duplicate region names")
    return tuple(regions)


def load_region_catalog(path) -> tuple:
    return parse_region_catalog(_read(path), str(path))


def default_region_catalog() -> tuple:
    return tuple(default_regions().values())
