"""Batch command-line driver: named numerical experiments emitted as
deterministic CSV or JSON tables.

    transmute-lab flow       running of 1/tau along an energy ray
    transmute-lab bind       bound-state scale vs coupling, per regulator
    transmute-lab theorem    removal of the cutoff at fixed coupling
    transmute-lab transmute  the renormalization limiting process
    transmute-lab scatter    continuum observables on an energy grid

Configuration is a flat key=value text file ('#' comments); command-line
flags override file values.  Output is byte-deterministic: floats render at
17 significant digits, rows keep input order (also under the worker pool
capped by TRANSMUTE_LAB_THREADS), and no timestamps enter the data body.
Exit codes: 0 success, 1 numerical failure (partial output suppressed),
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .amplitude import (
    bound_state_pole,
    cutoff_envelope,
    on_shell_amplitude,
    regulated_amplitude,
    renormalized_amplitude,
    transmutation_schedule,
)
from .energy_plane import ComplexEnergy, PhysicalScales, wavenumber
from .errors import NoBoundStateError, TransmuteLabError, UnitarityViolationError
from .observables import (
    f_from_tau,
    optical_theorem_defect,
    phase_shift_from_tau,
    tau_from_phase_shift,
)
from .regulators import (
    GaussianFormFactor,
    SharpCutoff,
    regulator_from_name,
    slide_kernel,
)
from .tolerances import POLE_GUARD
from .oracle.well import well_bound_state, well_from_coupling, well_phase_shift

__all__ = ["main"]

FOUR_PI = 4.0 * math.pi


class UsageError(Exception):
    """Bad flags or configuration; maps to exit code 2."""


# ----------------------------------------------------------------------
# configuration plumbing
# ----------------------------------------------------------------------

def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
                key, value = line.split("=", 1)
                values[key.strip()] = value.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    return values


def _parse_grid(text: str) -> list[float]:
    """Grid syntax: single value 'v', or 'lo:hi:n' (linear), or
    'lo:hi:n,log' (log-spaced); endpoints exact."""
    text = text.strip()
    spacing = "linear"
    if "," in text:
        text, mode = text.rsplit(",", 1)
        mode = mode.strip()
        if mode not in ("log", "lin", "linear"):
            raise UsageError(f"unknown grid spacing {mode!r}")
        spacing = "log" if mode == "log" else "linear"
    parts = text.split(":")
    try:
        if len(parts) == 1:
            value = float(parts[0])
            if value <= 0.0:
                raise UsageError(f"grid values must be positive, got {value}")
            return [value]
        if len(parts) != 3:
            raise ValueError
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"bad grid {text!r}; expected v or lo:hi:n[,log]") from None
    if n < 1:
        raise UsageError("grid needs at least one point")
    if lo <= 0.0 or hi <= 0.0:
        raise UsageError("grid bounds must be positive")
    if n == 1:
        return [lo]
    if spacing == "log":
        la, lb = math.log10(lo), math.log10(hi)
        # base-10 exponents keep decade schedules exact
        pts = [10.0 ** (la + (lb - la) * i / (n - 1)) for i in range(n)]
    else:
        pts = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    pts[0], pts[-1] = lo, hi
    return pts


def _parse_tol_overrides(pairs: list[str]) -> dict[str, float]:
    out: dict[str, float] = {}
    for pair in pairs:
        if "=" not in pair:
            raise UsageError(f"--tol-override expects name=value, got {pair!r}")
        name, value = pair.split("=", 1)
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise UsageError(f"tolerance override {pair!r} is not a number") from None
    return out


class Options:
    """Effective configuration: file values overridden by flags, with typed
    accessors that raise UsageError on malformed input."""

    def __init__(self, file_values: dict[str, str], flag_values: dict[str, str]):
        self.values = dict(file_values)
        self.values.update({k: v for k, v in flag_values.items() if v is not None})

    def get(self, key: str, default: str | None = None) -> str | None:
        return self.values.get(key, default)

    def get_float(self, key: str, default: float | None = None) -> float:
        raw = self.values.get(key)
        if raw is None:
            if default is None:
                raise UsageError(f"missing required configuration key {key!r}")
            return default
        try:
            return float(raw)
        except ValueError:
            raise UsageError(f"configuration key {key!r} expects a number, got {raw!r}") from None

    def get_int(self, key: str, default: int | None = None) -> int:
        raw = self.values.get(key)
        if raw is None:
            if default is None:
                raise UsageError(f"missing required configuration key {key!r}")
            return default
        try:
            return int(raw)
        except ValueError:
            raise UsageError(f"configuration key {key!r} expects an integer, got {raw!r}") from None

    def get_grid(self, key: str, default: str | None = None) -> list[float]:
        raw = self.values.get(key, default)
        if raw is None:
            raise UsageError(f"missing required configuration key {key!r}")
        return _parse_grid(raw)

    def effective(self) -> dict[str, str]:
        # the output path is not part of the experiment: echoing it would
        # break byte-identity of otherwise identical runs
        return dict(sorted((k, v) for k, v in self.values.items() if k != "out"))


def _scales(opts: Options) -> PhysicalScales:
    return PhysicalScales(opts.get_float("kinetic_constant", 1.0))


def _thread_count() -> int:
    raw = os.environ.get("TRANSMUTE_LAB_THREADS", "").strip()
    if not raw:
        return 0
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"TRANSMUTE_LAB_THREADS must be an integer, got {raw!r}") from None
    return max(0, n)


def _ordered_map(fn, items):
    """Map preserving input order; optional worker pool for grid rows."""
    threads = _thread_count()
    if threads == 0:
        threads = min(8, os.cpu_count() or 1)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ----------------------------------------------------------------------
# table model and deterministic rendering
# ----------------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return f"{value:.16e}"


@dataclass
class Table:
    command: str
    description: str
    config: dict[str, str]
    columns: list[tuple[str, str]]
    rows: list[list] = field(default_factory=list)
    footer: dict[str, object] = field(default_factory=dict)

    def write_csv(self, stream) -> None:
        w = stream.write
        w(f"# transmute-lab {self.command}\n")
        w(f"# {self.description}\n")
        for key, value in self.config.items():
            w(f"# config: {key}={value}\n")
        w("# columns:\n")
        for name, desc in self.columns:
            w(f"#   {name}: {desc}\n")
        w(",".join(name for name, _ in self.columns) + "\n")
        for row in self.rows:
            w(",".join(_fmt(cell) for cell in row) + "\n")
        for key, value in sorted(self.footer.items()):
            w(f"# {key}={_fmt(value)}\n")

    def write_json(self, stream) -> None:
        obj = {
            "command": self.command,
            "description": self.description,
            "config": self.config,
            "columns": [{"name": n, "description": d} for n, d in self.columns],
            "rows": self.rows,
            "footer": {k: v for k, v in self.footer.items()},
        }
        json.dump(obj, stream, sort_keys=True, indent=2, allow_nan=False)
        stream.write("\n")


def _emit(table: Table, opts: Options) -> None:
    fmt = opts.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise UsageError(f"unknown output format {fmt!r}")
    out = opts.get("out")
    if out is None:
        if fmt == "csv":
            table.write_csv(sys.stdout)
        else:
            table.write_json(sys.stdout)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        if fmt == "csv":
            table.write_csv(fh)
        else:
            table.write_json(fh)


def _fit_line(xs: list[float], ys: list[float]) -> tuple[float, float]:
    """Least-squares slope and intercept."""
    n = len(xs)
    if n < 2:
        raise TransmuteLabError("fit needs at least two points")
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    if sxx == 0.0:
        raise TransmuteLabError("fit abscissae are degenerate")
    slope = sxy / sxx
    return slope, my - slope * mx


def _build_regulator(name: str, opts: Options):
    lam = opts.get_float("lambda", 1.0)
    length = opts.get_float("a", 1.0)
    return regulator_from_name(name, cutoff=lam, length=length)


def _point_on_ray(magnitude: float, phase: float) -> ComplexEnergy:
    if phase == 0.0:
        return ComplexEnergy(magnitude, 0.0)
    if phase == 0.5 * math.pi:
        return ComplexEnergy(0.0, magnitude)
    if phase == math.pi:
        return ComplexEnergy(-magnitude, 0.0)
    if not (0.0 < phase < math.pi):
        raise UsageError(f"ray phase must lie in [0, pi], got {phase}")
    return ComplexEnergy(magnitude * math.cos(phase), magnitude * math.sin(phase))


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

def cmd_flow(opts: Options) -> Table:
    """Transport the amplitude from an anchor (z0, tau0) along an energy ray
    and tabulate 1/tau, whose real part runs linearly in ln|z| with slope
    -1/(4 pi) for the exact kernel."""
    scales = _scales(opts)
    try:
        z0 = ComplexEnergy(opts.get_float("z0_re", 0.0), opts.get_float("z0_im", 1.0))
        if z0.is_zero:
            raise UsageError("flow anchor z0 must be nonzero")
        tau0 = complex(opts.get_float("tau0_re", FOUR_PI), opts.get_float("tau0_im", 0.0))
    except TransmuteLabError as exc:
        raise UsageError(f"invalid flow anchor: {exc}") from exc
    reg_name = opts.get("regulator", "pure-delta")
    reg = _build_regulator(reg_name, opts)
    phase = opts.get_float("z_phase", 0.5 * math.pi)
    magnitudes = opts.get_grid("energy", "1:2980.9579870417283:9,log")
    points = [_point_on_ray(m, phase) for m in magnitudes]

    def row(point: ComplexEnergy):
        # tabulate 1/tau directly: it runs through amplitude poles smoothly
        # (a pole is just a zero of 1/tau); tau cells stay empty there
        if tau0 == 0:
            return [point.re, point.im, None, None, 0.0, 0.0]
        inv = 1.0 / tau0 - scales.kinetic_constant * slide_kernel(reg, point, z0, scales)
        if abs(inv) < POLE_GUARD:
            return [point.re, point.im, inv.real, inv.imag, None, None]
        tau = 1.0 / inv
        return [point.re, point.im, inv.real, inv.imag, tau.real, tau.imag]

    rows = _ordered_map(row, points)
    # group property row-to-row: re-anchoring 1/tau at row i must reproduce
    # row i+1 through the kernel between consecutive points
    max_defect = 0.0
    if tau0 != 0:
        for i in range(len(points) - 1):
            inv_i = complex(rows[i][2], rows[i][3])
            inv_next = complex(rows[i + 1][2], rows[i + 1][3])
            kernel = scales.kinetic_constant * slide_kernel(reg, points[i + 1], points[i], scales)
            max_defect = max(max_defect, abs(inv_next - (inv_i - kernel)))
    defect_tol = float(opts.get("flow_defect_tol") or 1e-12)
    if max_defect > defect_tol:
        raise TransmuteLabError(
            f"flow composition defect {max_defect:.3e} exceeds {defect_tol:.1e}"
        )
    return Table(
        command="flow",
        description="sliding-scale running of the amplitude from a fixed anchor",
        config=opts.effective(),
        columns=[
            ("z_re", "Re z of the evaluation point"),
            ("z_im", "Im z of the evaluation point"),
            ("re_inv_tau", "Re[1/tau(z)]; exact kernel: 1/tau(z) = 1/tau(z0) - ln(z/z0)/(4 pi)"),
            ("im_inv_tau", "Im[1/tau(z)] under the same running relation"),
            ("re_tau", "Re tau(z) = Re[ tau0 / (1 - tau0 * kappa * (g(z)-g(z0))) ]"),
            ("im_tau", "Im tau(z)"),
        ],
        rows=rows,
        footer={"max_flow_defect": max_defect, "rows": len(rows)},
    )


def cmd_bind(opts: Options) -> Table:
    """Bound-state scale per (coupling, regulator): solver vs the closed form
    Lambda * exp(-4 pi / eps), with the regulator's nominal cutoff standing
    in for Lambda when the regulator is smeared."""
    scales = _scales(opts)
    eps_grid = opts.get_grid("epsilon", "1:4:3,log")
    names = [n.strip() for n in (opts.get("regulator") or "sharp-cutoff,gaussian,circular-well,pure-delta").split(",")]
    lam = opts.get_float("lambda", 1.0)
    length = opts.get_float("a", 1.0)
    kappa = scales.kinetic_constant

    def solve(name: str, eps: float):
        if name == "pure-delta":
            return None, None
        if name == "sharp-cutoff":
            nominal = lam
            solver = bound_state_pole(eps, SharpCutoff(lam), scales).energy
        elif name == "gaussian":
            nominal = kappa / length**2
            solver = bound_state_pole(eps, GaussianFormFactor(length), scales).energy
        elif name == "circular-well":
            nominal = kappa / length**2
            solver = well_bound_state(well_from_coupling(eps, length, scales), scales)
        else:
            raise UsageError(f"unknown regulator {name!r} for bind")
        return solver, nominal * math.exp(-FOUR_PI / eps)

    rows = []
    fits: dict[str, tuple[float, float]] = {}
    for name in names:
        xs, ys = [], []
        for eps in eps_grid:
            if name == "pure-delta":
                rows.append([eps, name, None, None, None, "NO_BOUND_STATE"])
                continue
            try:
                solver, closed = solve(name, eps)
            except NoBoundStateError:
                rows.append([eps, name, None, None, None, "NO_BOUND_STATE"])
                continue
            rel = (solver - closed) / closed
            rows.append([eps, name, solver, closed, rel, "OK"])
            xs.append(-FOUR_PI / eps)
            ys.append(math.log(solver))
        if len(xs) >= 2:
            slope, intercept = _fit_line(xs, ys)
            fits[name] = (slope, math.exp(intercept))

    footer: dict[str, object] = {"rows": len(rows)}
    for name, (slope, lam_eff) in fits.items():
        tag = name.replace("-", "_")
        footer[f"fit_slope_{tag}"] = slope
        footer[f"lambda_eff_{tag}"] = lam_eff
    if "sharp-cutoff" in fits:
        base = fits["sharp-cutoff"][1]
        for name, (_, lam_eff) in fits.items():
            if name != "sharp-cutoff":
                footer[f"prefactor_vs_sharp_cutoff_{name.replace('-', '_')}"] = lam_eff / base
    return Table(
        command="bind",
        description="bound-state energy: ln E_B runs linearly in -4 pi/eps with a regulator-dependent prefactor",
        config=opts.effective(),
        columns=[
            ("epsilon", "dimensionless attractive coupling"),
            ("regulator", "regulator name"),
            ("E_B_solver", "root of 1 + eps*I(-E) = 0 (or exact well matching)"),
            ("E_B_closed_form", "Lambda_nominal * exp(-4 pi / eps)"),
            ("rel_dev", "(E_B_solver - E_B_closed_form)/E_B_closed_form"),
            ("status", "OK or NO_BOUND_STATE"),
        ],
        rows=rows,
        footer=footer,
    )


def cmd_theorem(opts: Options) -> Table:
    """Remove the cutoff at fixed coupling: |tau_Lambda(z)| rises to a peak
    where the generated bound state sweeps past |z|, then falls to zero like
    4 pi / ln(Lambda/|z|).  Monotone decrease is asserted beyond the peak."""
    scales = _scales(opts)
    eps_grid = opts.get_grid("epsilon", "1")
    if len(eps_grid) != 1:
        raise UsageError("theorem takes a single epsilon")
    eps = eps_grid[0]
    z = ComplexEnergy(opts.get_float("z_re", 0.0), opts.get_float("z_im", 1.0))
    schedule = opts.get_grid("lambda", "1e2:1e12:6,log")
    magnitude = z.magnitude()
    for lam in schedule:
        if lam <= magnitude:
            raise UsageError(f"cutoff {lam} must exceed |z| = {magnitude}")

    def row(lam: float):
        amp = regulated_amplitude(eps, SharpCutoff(lam), z, scales)
        naive = FOUR_PI / math.log(lam / magnitude)
        return [lam, abs(amp.tau), naive, cutoff_envelope(eps, magnitude, lam)]

    rows = _ordered_map(row, schedule)
    peak_lambda = magnitude * math.exp(FOUR_PI / eps)
    beyond = [(lam, row_) for lam, row_ in zip(schedule, rows) if lam > peak_lambda]
    monotone = all(b[1][1] < a[1][1] for a, b in zip(beyond, beyond[1:]))
    envelope_ok = all(r[3] is None or r[1] <= r[3] * (1.0 + 1e-12) for r in rows)
    footer: dict[str, object] = {
        "peak_lambda": peak_lambda,
        "monotone_beyond_peak": monotone,
        "envelope_respected": envelope_ok,
        "rows": len(rows),
    }
    if len(beyond) >= 2:
        slope, _ = _fit_line([math.log(lam) for lam, _ in beyond], [1.0 / r[1] for _, r in beyond])
        footer["fit_slope_beyond_peak"] = slope
        footer["fit_slope_target"] = 1.0 / FOUR_PI
    if not monotone:
        raise TransmuteLabError("|tau_Lambda| failed to decrease monotonically beyond the peak")
    if not envelope_ok:
        raise TransmuteLabError("|tau_Lambda| violated its rigorous envelope")
    return Table(
        command="theorem",
        description="cutoff removal at fixed coupling: the amplitude of the unregulated model is zero",
        config=opts.effective(),
        columns=[
            ("Lambda", "sharp kinetic-energy cutoff"),
            ("abs_tau", "|tau_Lambda(z)| = |eps / (1 + eps*I(z, Lambda))|"),
            ("bound_4pi_over_lnLambda", "asymptote 4 pi / ln(Lambda/|z|)"),
            ("envelope_bound", "rigorous bound 4 pi / (ln((Lambda-|z|)/|z|) - 4 pi/eps) beyond the peak"),
        ],
        rows=rows,
        footer=footer,
    )


def cmd_transmute(opts: Options) -> Table:
    """Fix the target bound-state energy, send the cutoff to infinity and
    the coupling to zero along Lambda_n = E_B 10^n, eps_n = 4 pi/ln(Lambda_n/E_B);
    the regulated amplitude converges to 4 pi / ln(-E_B/z) one decade per step."""
    scales = _scales(opts)
    e_b = opts.get_float("e_b", 1.0)
    z = ComplexEnergy(opts.get_float("z_re", 2.0), opts.get_float("z_im", 0.0))
    steps = opts.get_int("steps", 10)
    if e_b <= 0.0:
        raise UsageError(f"e_b must be positive, got {e_b}")
    if steps < 2:
        raise UsageError("transmute needs steps >= 2")
    schedule = transmutation_schedule(e_b, z, steps, scales)
    target = renormalized_amplitude(e_b, z).tau
    rows = [
        [s.index, s.cutoff, s.coupling, s.amplitude.tau.real, s.amplitude.tau.imag, s.deviation]
        for s in schedule
    ]
    deviations = [s.deviation for s in schedule]
    monotone = all(b < a for a, b in zip(deviations, deviations[1:]))
    footer = {
        "closed_form_re": target.real,
        "closed_form_im": target.imag,
        "monotone_deviation": monotone,
        "rows": len(rows),
    }
    if not monotone:
        raise TransmuteLabError("transmutation deviations failed to decrease monotonically")
    return Table(
        command="transmute",
        description="renormalization limiting process at fixed bound-state energy",
        config=opts.effective(),
        columns=[
            ("n", "step index; Lambda_n = e_b * 10^n"),
            ("Lambda_n", "sharp cutoff at this step"),
            ("epsilon_n", "coupling 4 pi / ln(Lambda_n/e_b)"),
            ("re_tau", "Re tau_{eps_n, Lambda_n}(z)"),
            ("im_tau", "Im tau_{eps_n, Lambda_n}(z)"),
            ("deviation_from_closed_form", "|tau_n(z) - 4 pi / ln(-e_b/z)|"),
        ],
        rows=rows,
        footer=footer,
    )


def cmd_scatter(opts: Options) -> Table:
    """Continuum observables for a chosen model on an energy grid, with the
    two target-length routes cross-checked row by row."""
    scales = _scales(opts)
    model = opts.get("model") or opts.get("regulator") or "renormalized"
    energies = opts.get_grid("energy", "1e-3:1e3:13,log")
    eps = opts.get_float("epsilon", 1.0)
    lam = opts.get_float("lambda", 1.0)
    length = opts.get_float("a", 1.0)
    e_b = opts.get_float("e_b", 1.0)
    unitarity_tol = float(opts.get("unitarity_defect_tol") or 1e-9)

    if model == "renormalized" and e_b <= 0.0:
        raise UsageError(f"e_b must be positive, got {e_b}")
    if model not in ("renormalized", "pure-delta", "sharp-cutoff", "gaussian", "circular-well"):
        raise UsageError(f"unknown scatter model {model!r}")
    well = well_from_coupling(eps, length, scales) if model == "circular-well" else None

    def tau_at(energy: float) -> complex:
        if model == "renormalized":
            return renormalized_amplitude(e_b, ComplexEnergy.continuum(energy)).tau
        if model == "pure-delta":
            return 0.0 + 0.0j
        if model == "sharp-cutoff":
            return on_shell_amplitude(eps, SharpCutoff(lam), energy, scales).tau
        if model == "gaussian":
            return on_shell_amplitude(eps, GaussianFormFactor(length), energy, scales).tau
        delta = well_phase_shift(well, wavenumber(energy, scales), scales)
        return tau_from_phase_shift(delta)

    def row(energy: float):
        k = wavenumber(energy, scales)
        tau = tau_at(energy)
        f = f_from_tau(tau, k)
        l_optical = math.sqrt(8.0 * math.pi / k) * f.imag
        l_from_tau = -tau.imag / k
        defect = optical_theorem_defect(tau, k)
        status = "OK"
        delta0 = None
        try:
            delta0 = phase_shift_from_tau(tau, defect_tol=unitarity_tol)
        except UnitarityViolationError:
            status = "UNITARITY_VIOLATION"
        return [energy, k, f.real, f.imag, abs(f) ** 2, l_optical, l_from_tau, delta0, defect, status]

    rows = _ordered_map(row, energies)
    for r in rows:
        # the two target-length routes must agree row by row
        if abs(r[5] - r[6]) > 1e-12 * max(abs(r[6]), 1e-300):
            raise TransmuteLabError(
                f"target-length routes disagree at E = {r[0]!r}: {r[5]!r} vs {r[6]!r}"
            )
    n_violations = sum(1 for r in rows if r[9] != "OK")
    return Table(
        command="scatter",
        description=f"continuum observables for the {model} model",
        config=opts.effective(),
        columns=[
            ("E", "continuum energy (E + i0+)"),
            ("k", "wavenumber sqrt(E/kinetic_constant)"),
            ("re_f", "Re f(E), f = -sqrt(1/(8 pi k)) tau"),
            ("im_f", "Im f(E)"),
            ("dL_dtheta", "differential target length |f|^2"),
            ("L_optical", "total target length sqrt(8 pi/k) Im f (optical theorem)"),
            ("L_from_im_tau", "total target length -(1/k) Im tau"),
            ("delta0", "phase shift in (-pi/2, pi/2] with tau = -4 e^{i delta0} sin delta0"),
            ("unitarity_defect", "2 pi |f|^2 - sqrt(8 pi/k) Im f; zero for elastic unitary rows"),
            ("status", "OK or UNITARITY_VIOLATION"),
        ],
        rows=rows,
        footer={"rows": len(rows), "unitarity_violations": n_violations,
                "unitarity_defect_tol": unitarity_tol},
    )


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------

_COMMANDS = {
    "flow": cmd_flow,
    "bind": cmd_bind,
    "theorem": cmd_theorem,
    "transmute": cmd_transmute,
    "scatter": cmd_scatter,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="transmute-lab", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in _COMMANDS.items():
        p = sub.add_parser(name, help=(fn.__doc__ or "").split("\n")[0])
        p.add_argument("--config", help="flat key=value configuration file")
        p.add_argument("--regulator", help="regulator name (bind: comma-separated list)")
        p.add_argument("--epsilon", help="coupling value or grid v1:v2:n[,log]")
        p.add_argument("--lambda", dest="lam", help="cutoff value or schedule lo:hi:n[,log]")
        p.add_argument("--energy", help="energy grid lo:hi:n[,log]")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
        p.add_argument("--tol-override", action="append", default=[],
                       metavar="NAME=VALUE", help="override a named tolerance")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        file_values = _read_config_file(args.config) if args.config else {}
        flag_values = {
            "regulator": args.regulator,
            "epsilon": args.epsilon,
            "lambda": args.lam,
            "energy": args.energy,
            "out": args.out,
            "format": args.format,
        }
        opts = Options(file_values, flag_values)
        for name, value in _parse_tol_overrides(args.tol_override).items():
            opts.values[name] = repr(value)
        table = _COMMANDS[args.command](opts)
    except UsageError as exc:
        print(f"transmute-lab: usage error: {exc}", file=sys.stderr)
        return 2
    except TransmuteLabError as exc:
        print(f"transmute-lab: numerical failure: {exc}", file=sys.stderr)
        return 1
    _emit(table, opts)
    return 0


if __name__ == "__main__":
    sys.exit(main())
