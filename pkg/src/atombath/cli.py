"""Command line front end.

Four subcommands scan the library over grids of bath temperature,
detector speed and (proper) time: ``concurrence`` for entanglement
curves, ``coeffs`` for the rate and occupation tables, ``death-time``
for disentanglement times, ``wightman`` for correlation profiles.
Parameters merge from three layers: built-in defaults, then a flat
``key = value`` config file, then command line flags.  Output is CSV or
JSON with floats fixed to 12 significant digits, so repeated runs are
byte identical.

Exit codes: 0 success, 2 configuration problems, 3 numerical failures.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .coefficients import (
    BathParams,
    Coupling,
    DEFAULT_V_MAX,
    DetectorParams,
    gamma_td,
    gamma_udw,
    lindblad_coefficients,
    n_td,
    n_td_quadrature,
    n_udw,
    n_udw_quadrature,
    rate_unit,
)
from .correlations import (
    wightman_derivative,
    wightman_derivative_fd,
    wightman_moving,
    wightman_moving_quadrature,
)
from .dynamics import shared_state
from .entanglement import (
    concurrence,
    concurrence_closed_form,
    sudden_death_time,
    sudden_death_time_bisection,
)
from .specfun import QuadratureError

__all__ = ["ConfigError", "ScanConfig", "parse_config", "emit_config", "main"]


class ConfigError(ValueError):
    """Configuration file or flag value is unusable."""


_COUPLINGS = {"udw": Coupling.UDW, "td": Coupling.DERIVATIVE}


@dataclass(frozen=True)
class ScanConfig:
    """Fully resolved scan parameters shared by all subcommands.

    ``tau`` is a ``(start, stop, steps)`` grid of dimensionless times
    (``gamma_0 tau``); the ``wightman`` subcommand reads the same field
    as its grid of proper-time separations.
    """

    coupling: Coupling = Coupling.UDW
    beta_omega: tuple[float, ...] = (0.5, 1.0, 5.0)
    velocity: tuple[float, ...] = (0.0, 0.5, 0.9)
    tau: tuple[float, float, int] = (0.0, 5.0, 51)
    delta_omega: float = 0.0
    omega: float = 1.0
    coupling_strength: float = 1.0
    v_max: float = DEFAULT_V_MAX
    epsilon: float | None = None
    oracle: bool = False
    format: str = "csv"
    output: str | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.coupling, Coupling):
            raise ConfigError(f"coupling must be one of {sorted(_COUPLINGS)}")
        if not self.beta_omega or any(b <= 0.0 for b in self.beta_omega):
            raise ConfigError("beta_omega needs at least one positive value")
        if not 0.0 < self.v_max < 1.0:
            raise ConfigError(f"v_max must lie in (0, 1), got {self.v_max!r}")
        if not self.velocity or any(
            not 0.0 <= v <= self.v_max for v in self.velocity
        ):
            raise ConfigError(
                f"velocity values must lie in [0, v_max={self.v_max}]"
            )
        start, stop, steps = self.tau
        if not (0.0 <= start < stop and steps >= 2):
            raise ConfigError(
                "tau grid needs 0 <= start < stop and steps >= 2, "
                f"got {self.tau!r}"
            )
        if not self.omega > 0.0:
            raise ConfigError(f"omega must be positive, got {self.omega!r}")
        if not self.coupling_strength > 0.0:
            raise ConfigError(
                f"coupling_strength must be positive, got {self.coupling_strength!r}"
            )
        if self.epsilon is not None and not self.epsilon > 0.0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")


def _parse_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key} expects a number, got {raw!r}") from None


def _parse_float_list(key: str, raw: str) -> tuple[float, ...]:
    parts = [p.strip() for p in raw.split(",") if p.strip()]
    if not parts:
        raise ConfigError(f"{key} expects a comma separated list of numbers")
    return tuple(_parse_float(key, p) for p in parts)


def _parse_grid(key: str, raw: str) -> tuple[float, float, int]:
    parts = raw.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{key} expects start:stop:steps, got {raw!r}")
    start = _parse_float(key, parts[0])
    stop = _parse_float(key, parts[1])
    try:
        steps = int(parts[2])
    except ValueError:
        raise ConfigError(f"{key} steps must be an integer, got {parts[2]!r}") from None
    return start, stop, steps


def _parse_coupling(key: str, raw: str) -> Coupling:
    try:
        return _COUPLINGS[raw.strip().lower()]
    except KeyError:
        raise ConfigError(
            f"{key} must be one of {sorted(_COUPLINGS)}, got {raw!r}"
        ) from None


def _parse_bool(key: str, raw: str) -> bool:
    val = raw.strip().lower()
    if val in ("true", "false"):
        return val == "true"
    raise ConfigError(f"{key} must be true or false, got {raw!r}")


_KEY_PARSERS = {
    "coupling": _parse_coupling,
    "beta_omega": _parse_float_list,
    "velocity": _parse_float_list,
    "tau": _parse_grid,
    "delta_omega": _parse_float,
    "omega": _parse_float,
    "coupling_strength": _parse_float,
    "v_max": _parse_float,
    "epsilon": _parse_float,
    "oracle": _parse_bool,
    "format": lambda key, raw: raw.strip(),
    "output": lambda key, raw: raw.strip(),
}


def parse_config(text: str) -> ScanConfig:
    """Parse flat ``key = value`` text into a :class:`ScanConfig`.

    ``#`` starts a comment anywhere on a line; blank lines are skipped.
    Unknown keys and unparsable values are errors carrying the line
    number.  Unspecified keys keep their defaults.
    """
    return ScanConfig(**_parse_config_values(text))


def _parse_config_values(text: str) -> dict:
    values: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key = value, got {line!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        if key not in _KEY_PARSERS:
            raise ConfigError(f"line {lineno}: unknown config key {key!r}")
        try:
            values[key] = _KEY_PARSERS[key](key, raw.strip())
        except ConfigError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None
    return values


def emit_config(cfg: ScanConfig) -> str:
    """Render a config back to text; ``parse_config`` round-trips it."""
    lines = [
        f"coupling = {cfg.coupling.value}",
        "beta_omega = " + ", ".join(repr(b) for b in cfg.beta_omega),
        "velocity = " + ", ".join(repr(v) for v in cfg.velocity),
        f"tau = {cfg.tau[0]!r}:{cfg.tau[1]!r}:{cfg.tau[2]}",
        f"delta_omega = {cfg.delta_omega!r}",
        f"omega = {cfg.omega!r}",
        f"coupling_strength = {cfg.coupling_strength!r}",
        f"v_max = {cfg.v_max!r}",
    ]
    if cfg.epsilon is not None:
        lines.append(f"epsilon = {cfg.epsilon!r}")
    lines.append(f"oracle = {'true' if cfg.oracle else 'false'}")
    lines.append(f"format = {cfg.format}")
    if cfg.output is not None:
        lines.append(f"output = {cfg.output}")
    return "\n".join(lines) + "\n"


def _grid(spec: tuple[float, float, int]) -> list[float]:
    start, stop, steps = spec
    width = (stop - start) / (steps - 1)
    return [start + i * width for i in range(steps)]


def _detector(cfg: ScanConfig, v: float, coupling: Coupling | None = None) -> DetectorParams:
    return DetectorParams(
        omega=cfg.omega,
        lam=cfg.coupling_strength,
        velocity=v,
        coupling=cfg.coupling if coupling is None else coupling,
        v_max=cfg.v_max,
    )


def _run_concurrence(cfg: ScanConfig):
    cols = ["beta_omega", "velocity", "tau_gamma0", "concurrence"]
    if cfg.oracle:
        cols.append("concurrence_wootters")
    rows = []
    for bw in cfg.beta_omega:
        bath = BathParams(beta=bw / cfg.omega)
        for v in cfg.velocity:
            det = _detector(cfg, v)
            coeffs = lindblad_coefficients(det, bath, cfg.delta_omega)
            unit = rate_unit(det)
            for t in _grid(cfg.tau):
                tau = t / unit
                row = [bw, v, t, concurrence_closed_form(coeffs, tau)]
                if cfg.oracle:
                    row.append(concurrence(shared_state(coeffs, tau)))
                rows.append(row)
    return cols, rows


def _run_coeffs(cfg: ScanConfig):
    cols = ["beta_omega", "velocity", "n_udw", "n_td", "gamma_udw_ratio", "gamma_td_ratio"]
    if cfg.oracle:
        cols += ["n_udw_quadrature", "n_td_quadrature"]
    rows = []
    for bw in cfg.beta_omega:
        bath = BathParams(beta=bw / cfg.omega)
        for v in cfg.velocity:
            det_u = _detector(cfg, v, Coupling.UDW)
            det_t = _detector(cfg, v, Coupling.DERIVATIVE)
            row = [
                bw,
                v,
                n_udw(det_u, bath),
                n_td(det_t, bath),
                gamma_udw(det_u) / rate_unit(det_u),
                gamma_td(det_t) / rate_unit(det_t),
            ]
            if cfg.oracle:
                row += [n_udw_quadrature(det_u, bath), n_td_quadrature(det_t, bath)]
            rows.append(row)
    return cols, rows


def _run_death_time(cfg: ScanConfig):
    cols = ["beta_omega", "velocity", "death_time_gamma0"]
    if cfg.oracle:
        cols.append("death_time_bisection")
    rows = []
    for bw in cfg.beta_omega:
        bath = BathParams(beta=bw / cfg.omega)
        for v in cfg.velocity:
            det = _detector(cfg, v)
            coeffs = lindblad_coefficients(det, bath, cfg.delta_omega)
            unit = rate_unit(det)
            row = [bw, v, sudden_death_time(coeffs) * unit]
            if cfg.oracle:
                row.append(sudden_death_time_bisection(coeffs) * unit)
            rows.append(row)
    return cols, rows


def _run_wightman(cfg: ScanConfig):
    cols = ["beta_omega", "velocity", "s", "re_w", "im_w"]
    if cfg.oracle:
        cols += ["re_w_oracle", "im_w_oracle"]
    rows = []
    for bw in cfg.beta_omega:
        beta = bw / cfg.omega
        if cfg.epsilon is not None and not cfg.epsilon <= 0.1 * beta:
            raise ConfigError(
                f"epsilon={cfg.epsilon!r} is too large for beta*omega={bw!r}; "
                "the regulator must stay at or below 0.1*beta"
            )
        bath = BathParams(beta=beta)
        for v in cfg.velocity:
            det = _detector(cfg, v)
            for s in _grid(cfg.tau):
                if cfg.coupling is Coupling.UDW:
                    w = wightman_moving(s, det, bath, cfg.epsilon)
                    oracle = (
                        wightman_moving_quadrature(s, det, bath, cfg.epsilon)
                        if cfg.oracle
                        else None
                    )
                else:
                    w = wightman_derivative(s, det, bath, cfg.epsilon)
                    oracle = (
                        wightman_derivative_fd(s, det, bath, cfg.epsilon)
                        if cfg.oracle
                        else None
                    )
                row = [bw, v, s, w.real, w.imag]
                if oracle is not None:
                    row += [oracle.real, oracle.imag]
                rows.append(row)
    return cols, rows


_RUNNERS = {
    "concurrence": _run_concurrence,
    "coeffs": _run_coeffs,
    "death-time": _run_death_time,
    "wightman": _run_wightman,
}

# the wightman grid is a separation axis, so it must not start at the pole
_WIGHTMAN_DEFAULT_GRID = (0.1, 3.0, 30)


def _format_value(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.11e}"


def render_csv(cols: list[str], rows: list[list[float]]) -> str:
    lines = [",".join(cols)]
    for row in rows:
        lines.append(",".join(_format_value(x) for x in row))
    return "\n".join(lines) + "\n"


def render_json(cols: list[str], rows: list[list[float]]) -> str:
    def value(x: float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return float(f"{x:.11e}")

    data = [{c: value(x) for c, x in zip(cols, row)} for row in rows]
    return json.dumps(data, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atombath",
        description="Thermal relaxation and entanglement loss of a moving atom.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = [
        ("concurrence", "entanglement of the evolved pair on a time grid"),
        ("coeffs", "occupation numbers and rates over the scan grid"),
        ("death-time", "disentanglement times over the scan grid"),
        ("wightman", "field correlation profiles along the worldline"),
    ]
    for name, help_text in specs:
        sp = sub.add_parser(name, help=help_text)
        _add_common_options(sp)
    return parser


def _add_common_options(sp: argparse.ArgumentParser) -> None:
    # defaults stay None so that only flags the user actually passed
    # override the config file
    sp.add_argument("--config", metavar="PATH", help="flat key = value config file")
    sp.add_argument("--coupling", choices=sorted(_COUPLINGS))
    sp.add_argument(
        "--beta-omega",
        metavar="LIST",
        help="comma separated values of beta*omega",
    )
    sp.add_argument(
        "--velocity", metavar="LIST", help="comma separated detector speeds"
    )
    sp.add_argument(
        "--tau",
        metavar="START:STOP:STEPS",
        help="time grid in 1/gamma_0 units (separation grid for wightman)",
    )
    sp.add_argument("--delta-omega", type=float, help="level-splitting shift")
    sp.add_argument("--omega", type=float, help="level splitting")
    sp.add_argument("--coupling-strength", type=float, help="coupling constant")
    sp.add_argument("--v-max", type=float, help="largest admissible speed")
    sp.add_argument("--epsilon", type=float, help="correlation regulator")
    sp.add_argument(
        "--oracle",
        action="store_true",
        default=None,
        help="append brute-force cross-check columns",
    )
    sp.add_argument("--format", choices=["csv", "json"])
    sp.add_argument("--output", metavar="PATH", help="write here instead of stdout")


def _config_from_args(args: argparse.Namespace) -> ScanConfig:
    values: dict = {}
    if args.command == "wightman":
        values["tau"] = _WIGHTMAN_DEFAULT_GRID
    if args.config is not None:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config file {args.config}: {exc}") from None
        values.update(_parse_config_values(text))
    if args.coupling is not None:
        values["coupling"] = _COUPLINGS[args.coupling]
    if args.beta_omega is not None:
        values["beta_omega"] = _parse_float_list("beta_omega", args.beta_omega)
    if args.velocity is not None:
        values["velocity"] = _parse_float_list("velocity", args.velocity)
    if args.tau is not None:
        values["tau"] = _parse_grid("tau", args.tau)
    for key, flag in (
        ("delta_omega", args.delta_omega),
        ("omega", args.omega),
        ("coupling_strength", args.coupling_strength),
        ("v_max", args.v_max),
        ("epsilon", args.epsilon),
        ("oracle", args.oracle),
        ("format", args.format),
        ("output", args.output),
    ):
        if flag is not None:
            values[key] = flag
    return ScanConfig(**values)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        cols, rows = _RUNNERS[args.command](cfg)
        text = render_csv(cols, rows) if cfg.format == "csv" else render_json(cols, rows)
        if cfg.output is None:
            sys.stdout.write(text)
        else:
            Path(cfg.output).write_text(text)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (QuadratureError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0
