"""Command-line front end: reproducible, machine-readable analysis runs.

Exit codes: 0 success, 1 usage error, 2 numerical failure.  CSV outputs are
deterministic byte-for-byte for identical invocations; a sidecar
``<out>.manifest.json`` carrying the run timestamp accompanies file outputs.
"""

from __future__ import annotations

import json
import sys
from datetime import datetime, timezone

import click

from . import __version__
from .atom import AtomSpec
from .errors import DressedClockError
from .fields import LEFT_CIRCULAR_DELTA, TrapConfig
from .magic import magic_scan, solve_magic_point
from .robustness import DeviationBudget, sensitivity_report, shift_profile
from .static import find_static_magic_field, static_clock_shift

_FMT = "{:.10g}"


class _Group(click.Group):
    """Group with the exit-code convention 1=usage, 2=numerical failure."""

    def main(self, *args, **kwargs):  # noqa: D102
        kwargs["standalone_mode"] = False
        try:
            return super().main(*args, **kwargs)
        except click.UsageError as exc:
            exc.show()
            sys.exit(1)
        except click.ClickException as exc:
            exc.show()
            sys.exit(1)
        except click.exceptions.Abort:
            sys.exit(130)
        except ValueError as exc:
            click.echo(f"invalid parameters: {exc}", err=True)
            sys.exit(1)
        except (DressedClockError, RuntimeError) as exc:
            click.echo(f"numerical failure: {exc}", err=True)
            sys.exit(2)


@click.group(cls=_Group)
@click.version_option(__version__)
def main():
    """rf-dressed clock shifts and second-order magic trap conditions."""


def _load_atom(atom_file: str | None, g_j: float | None, g_i: float | None,
               hfs: float | None) -> AtomSpec:
    if atom_file is not None:
        with open(atom_file, encoding="utf-8") as fh:
            atom = AtomSpec.from_dict(json.load(fh))
    else:
        atom = AtomSpec()
    changes = {}
    if g_j is not None:
        changes["g_j"] = g_j
    if g_i is not None:
        changes["g_i"] = g_i
    if hfs is not None:
        changes["hfs_frequency"] = hfs
    return atom.replace(**changes) if changes else atom


def _manifest(command: str, parameters: dict, timestamp: bool = False) -> dict:
    mani = {
        "command": command,
        "parameters": parameters,
        "version": __version__,
    }
    if timestamp:
        mani["timestamp"] = datetime.now(timezone.utc).isoformat()
    return mani


def _write_sidecar(out: str | None, manifest: dict) -> None:
    if out is None:
        return
    sidecar = dict(manifest)
    sidecar["timestamp"] = datetime.now(timezone.utc).isoformat()
    with open(out + ".manifest.json", "w", encoding="utf-8") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


_atom_options = [
    click.option("--atom-file", type=click.Path(exists=True, dir_okay=False),
                 default=None, help="JSON file with atom constants."),
    click.option("--g-j", type=float, default=None, help="Override electronic g factor."),
    click.option("--g-i", type=float, default=None, help="Override nuclear g factor."),
    click.option("--hfs", type=float, default=None, help="Override hyperfine splitting, Hz."),
]


def _with_atom_options(fn):
    for opt in reversed(_atom_options):
        fn = opt(fn)
    return fn


@main.command("static-magic")
@_with_atom_options
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON report.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the report to a file instead of stdout.")
def static_magic(atom_file, g_j, g_i, hfs, as_json, out):
    """Locate the undressed magic field and its curvature."""
    atom = _load_atom(atom_file, g_j, g_i, hfs)
    b_magic, curvature = find_static_magic_field(atom)
    shift = static_clock_shift(atom, b_magic)
    result = {
        "b_magic_G": b_magic,
        "clock_shift_Hz": shift,
        "curvature_Hz_per_G2": curvature,
        "quadratic_response_C_Hz_per_G2": curvature / 2.0,
    }
    manifest = _manifest("static-magic", {"atom": atom.to_dict()})
    if as_json:
        text = json.dumps({"result": result, "manifest": manifest},
                          indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"{key} = " + _FMT.format(value) for key, value in result.items()]
        text = "\n".join(lines) + "\n"
    _emit(text, out)
    _write_sidecar(out, manifest)


def _csv_header(manifest: dict, columns: list[str]) -> list[str]:
    lines = [f"# manifest: {json.dumps(manifest, sort_keys=True)}"]
    lines.append(",".join(columns))
    return lines


@main.command("magic-scan")
@_with_atom_options
@click.option("--freq-start", type=float, required=True, help="First rf frequency, MHz.")
@click.option("--freq-stop", type=float, required=True, help="Last rf frequency, MHz.")
@click.option("--freq-step", type=float, default=0.1, show_default=True,
              help="Frequency step, MHz.")
@click.option("--method", type=click.Choice(["rwa", "wffa", "both"]), default="both",
              show_default=True)
@click.option("--blocks", type=int, default=21, show_default=True,
              help="Floquet truncation (odd).")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write CSV here instead of stdout.")
def magic_scan_cmd(atom_file, g_j, g_i, hfs, freq_start, freq_stop, freq_step,
                   method, blocks, out):
    """Second-order magic (B_I, B_rf) pairs over a frequency range (CSV)."""
    atom = _load_atom(atom_file, g_j, g_i, hfs)
    if freq_step <= 0:
        raise click.UsageError("--freq-step must be positive")
    n_steps = int(round((freq_stop - freq_start) / freq_step))
    freqs = [freq_start + k * freq_step for k in range(n_steps + 1)]
    freqs = [f for f in freqs if f <= freq_stop + 1e-9]
    if not freqs or freq_stop < freq_start:
        raise click.UsageError("empty frequency range")
    methods = ["rwa", "wffa"] if method == "both" else [method]

    manifest = _manifest("magic-scan", {
        "atom": atom.to_dict(), "freq_start_MHz": freq_start,
        "freq_stop_MHz": freq_stop, "freq_step_MHz": freq_step,
        "method": method, "blocks": blocks,
    })
    columns = [
        "method", "omega_over_2pi_MHz", "b_ioffe_magic_G", "b_rf_magic_G",
        "a0_Hz", "a3_Hz_per_G6", "newton_iterations",
        "residual_a1_Hz_per_G2", "residual_a2_Hz_per_G4", "status",
    ]
    lines = _csv_header(manifest, columns)
    for meth in methods:
        points = magic_scan(atom, [f * 1e6 for f in freqs], method=meth, n_blocks=blocks)
        for freq, point in zip(freqs, points):
            if point is None:
                lines.append(f"{meth},{_FMT.format(freq)},,,,,,,,failed")
                continue
            row = [
                meth, _FMT.format(freq),
                _FMT.format(point.b_ioffe_magic), _FMT.format(point.b_rf_magic),
                _FMT.format(point.expansion.a0), _FMT.format(point.expansion.a3),
                str(point.newton_iterations),
                _FMT.format(point.residual_norm[0]), _FMT.format(point.residual_norm[1]),
                "ok",
            ]
            lines.append(",".join(row))
    _emit("\n".join(lines) + "\n", out)
    _write_sidecar(out, manifest)


@main.command("profile")
@_with_atom_options
@click.option("--b-ioffe", type=float, required=True, help="Ioffe field, G.")
@click.option("--b-rf", type=float, default=0.0, show_default=True,
              help="rf amplitude, G (0 for an undressed trap).")
@click.option("--freq", type=float, required=True, help="rf frequency, MHz.")
@click.option("--delta", type=float, default=LEFT_CIRCULAR_DELTA, show_default=True,
              help="rf polarization angle, rad.")
@click.option("--method", type=click.Choice(["rwa", "wffa", "full"]), default="wffa",
              show_default=True)
@click.option("--u-max", type=float, default=2.0e4, show_default=True,
              help="Largest trap potential row, Hz.")
@click.option("--points", type=int, default=40, show_default=True)
@click.option("--state", type=click.Choice(["upper", "lower"]), default="upper",
              show_default=True, help="Clock state whose potential defines the axis.")
@click.option("--budget-ioffe", type=float, default=0.0, show_default=True,
              help="Relative Ioffe-field deviation.")
@click.option("--budget-rf", type=float, default=0.0, show_default=True,
              help="Relative rf-amplitude deviation.")
@click.option("--budget-pol", type=float, default=0.0, show_default=True,
              help="Polarization offset deviation, rad.")
@click.option("--blocks", type=int, default=21, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def profile_cmd(atom_file, g_j, g_i, hfs, b_ioffe, b_rf, freq, delta, method,
                u_max, points, state, budget_ioffe, budget_rf, budget_pol, blocks, out):
    """Shift-versus-potential profile of one trap (CSV)."""
    atom = _load_atom(atom_file, g_j, g_i, hfs)
    if u_max < 0:
        raise click.UsageError("--u-max must be non-negative")
    trap = TrapConfig(
        b_ioffe=b_ioffe, rf_amplitude=b_rf, rf_frequency=freq * 1e6,
        polarization_delta=delta,
    )
    budget = DeviationBudget(
        rel_ioffe=budget_ioffe, rel_rf=budget_rf, polarization_offset=budget_pol
    )
    table = shift_profile(
        atom, trap, budget=budget, u_trap_max=u_max, n_points=points,
        method=method, state=state, n_blocks=blocks,
    )
    manifest = _manifest("profile", {
        "atom": atom.to_dict(), "b_ioffe_G": b_ioffe, "b_rf_G": b_rf,
        "freq_MHz": freq, "delta_rad": delta, "method": method,
        "u_max_Hz": u_max, "points": points, "state": state,
        "budget": [budget_ioffe, budget_rf, budget_pol], "blocks": blocks,
    })
    lines = _csv_header(manifest, ["u_trap_Hz", "shift_minus_center_Hz", "rms_deviation_Hz"])
    for u, s, d in zip(table.u_trap, table.shift, table.rms_dev):
        lines.append(",".join(_FMT.format(v) for v in (u, s, d)))
    if table.truncated:
        lines.append("# truncated: quasienergy classification failed beyond the last row")
    _emit("\n".join(lines) + "\n", out)
    _write_sidecar(out, manifest)


@main.command("robustness")
@_with_atom_options
@click.option("--freq", type=float, required=True, help="rf frequency, MHz.")
@click.option("--method", type=click.Choice(["rwa", "wffa"]), default="wffa",
              show_default=True)
@click.option("--blocks", type=int, default=21, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def robustness_cmd(atom_file, g_j, g_i, hfs, freq, method, blocks, out):
    """Sensitivity coefficients of the magic point at one frequency (JSON)."""
    atom = _load_atom(atom_file, g_j, g_i, hfs)
    point = solve_magic_point(atom, freq * 1e6, method, n_blocks=blocks)
    report = sensitivity_report(atom, point, n_blocks=blocks)
    manifest = _manifest("robustness", {
        "atom": atom.to_dict(), "freq_MHz": freq, "method": method, "blocks": blocks,
    })
    payload = {
        "magic_point": {
            "omega_over_2pi_MHz": point.rf_frequency / 1e6,
            "b_ioffe_magic_G": point.b_ioffe_magic,
            "b_rf_magic_G": point.b_rf_magic,
            "a0_Hz": point.expansion.a0,
            "a3_Hz_per_G6": point.expansion.a3,
        },
        "sensitivities": {
            "alpha_ioffe": list(report.alpha_ioffe),
            "alpha_rf": list(report.alpha_rf),
            "beta": list(report.beta),
            "beta0_residual": report.beta0_residual,
            "gamma": list(report.gamma),
        },
        "units": {
            "alpha": ["Hz", "Hz_per_G2", "Hz_per_G4"],
            "beta": ["Hz_per_G2_per_rad", "Hz_per_G4_per_rad"],
            "beta0_residual": "Hz_per_rad",
            "gamma": ["Hz_per_rad2", "Hz_per_G2_per_rad2", "Hz_per_G4_per_rad2"],
        },
        "finite_difference": {
            "field_step_rel": report.field_step_rel,
            "polarization_step_rad": report.polarization_step_rad,
        },
        "manifest": manifest,
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", out)
    _write_sidecar(out, manifest)


if __name__ == "__main__":
    main()
