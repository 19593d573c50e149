"""CSV, plot and manifest files for a completed run."""

from __future__ import annotations

import csv
import datetime as _dt
import json
import platform
import shutil
import tempfile
from importlib import metadata
from pathlib import Path

import numpy as np

from .fock import off_diagonal_mass_ratio, photon_distribution
from .simulator import COLUMNS, Record, RunResult, SimConfig, TimeSeries

SERIES_FILE = "series.csv"
MANIFEST_FILE = "manifest.json"


def _fmt(x) -> str:
    # repr() of a Python float is the shortest string that round-trips
    return repr(float(x)) if not isinstance(x, (int, np.integer)) else str(int(x))


def write_series_csv(series: TimeSeries, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in series.records:
            w.writerow([_fmt(getattr(r, c)) for c in COLUMNS])


def read_series_csv(path: str | Path) -> TimeSeries:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != COLUMNS:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        records = [
            Record(int(row["atom"]), *(float(row[c]) for c in COLUMNS[1:])) for row in reader
        ]
    return TimeSeries(records)


def write_rho_csv(rho: np.ndarray, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("m", "n", "re", "im"))
        dim = rho.shape[0]
        for m in range(dim):
            for n in range(dim):
                z = rho[m, n]
                w.writerow((m, n, _fmt(z.real), _fmt(z.imag)))


def read_rho_csv(path: str | Path) -> np.ndarray:
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    dim = int(data[:, 0].max()) + 1
    rho = np.zeros((dim, dim), dtype=complex)
    rho[data[:, 0].astype(int), data[:, 1].astype(int)] = data[:, 2] + 1j * data[:, 3]
    return rho


def write_pn_csv(rho: np.ndarray, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("n", "p"))
        for n, p in enumerate(photon_distribution(rho)):
            w.writerow((n, _fmt(p)))


def _plots(result: RunResult, out: Path) -> list[str]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    # fixed salt and no date keep the SVG output reproducible
    matplotlib.rcParams["svg.hashsalt"] = "micromaser"
    meta = {"Date": None}
    written = []

    series = result.series
    fig, axes = plt.subplots(3, 1, figsize=(6, 7), sharex=True)
    for ax, name, label in zip(axes, ("e_field", "y1", "y2"), ("<E>", "<Y1>", "<Y2>")):
        if len(series):
            ax.plot(series.column("atom"), series.column(name), ".-", lw=0.6, ms=3)
        ax.set_ylabel(label)
    axes[-1].set_xlabel("atoms passed")
    fig.tight_layout()
    fig.savefig(out / "observables.svg", metadata=meta)
    plt.close(fig)
    written.append("observables.svg")

    for k, rho in sorted(result.snapshots.items()):
        p = photon_distribution(rho)
        fig, ax = plt.subplots(figsize=(5, 3))
        ax.bar(np.arange(p.size), p)
        ax.set_xlabel("n")
        ax.set_ylabel("P_n")
        ax.set_title(f"after {k} atoms")
        fig.tight_layout()
        fig.savefig(out / f"pn_{k}.svg", metadata=meta)
        plt.close(fig)

        fig, ax = plt.subplots(figsize=(5, 4))
        im = ax.imshow(np.abs(rho), origin="lower", cmap="viridis")
        fig.colorbar(im, ax=ax, label="|rho_mn|")
        ax.set_xlabel("n")
        ax.set_ylabel("m")
        ax.set_title(f"after {k} atoms")
        fig.tight_layout()
        fig.savefig(out / f"rho_{k}.svg", metadata=meta)
        plt.close(fig)
        written += [f"pn_{k}.svg", f"rho_{k}.svg"]
    return written


def _versions() -> dict:
    out = {"python": platform.python_version(), "numpy": np.__version__}
    for pkg in ("artifact", "matplotlib"):
        try:
            out[pkg] = metadata.version(pkg)
        except metadata.PackageNotFoundError:
            pass
    return out


def build_manifest(cfg: SimConfig, result: RunResult, files: list[str]) -> dict:
    series = result.series
    trace_errors = series.column("trace_error") if len(series) else np.zeros(0)
    return {
        "config": cfg.to_dict(),
        "resolved_parts": [
            {
                "block": str(p.block),
                "weight": [complex(p.weight).real, complex(p.weight).imag],
                "seed_phase": [complex(p.seed_phase).real, complex(p.seed_phase).imag],
            }
            for p in result.parts
        ],
        "derived": {
            "g_tau": cfg.g_tau,
            "N_ex": cfg.n_ex if np.isfinite(cfg.n_ex) else None,
            "theta_int": cfg.theta_int if np.isfinite(cfg.theta_int) else None,
            "T_cav": cfg.t_cav if np.isfinite(cfg.t_cav) else None,
            "decay_duration": cfg.decay_duration,
        },
        "integrity": {
            "completeness_defect": result.completeness_defect,
            "max_trace_error": float(trace_errors.max()) if trace_errors.size else 0.0,
            "max_hermiticity_defect": series.max_hermiticity_defect,
        },
        "off_diagonal_mass_ratio": {
            str(k): off_diagonal_mass_ratio(rho) for k, rho in sorted(result.snapshots.items())
        },
        "versions": _versions(),
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
        "outputs": sorted(files + [MANIFEST_FILE]),
    }


def emit_outputs(cfg: SimConfig, result: RunResult, out_dir: str | Path, plots: bool = True) -> dict:
    """Write every output file of ``result`` into ``out_dir``; return the manifest.

    Files are first written to a scratch directory next to the targets and
    only moved into place when all of them succeeded, so a failure leaves no
    partial output behind.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    scratch = Path(tempfile.mkdtemp(prefix=".partial-", dir=out))
    try:
        files = [SERIES_FILE]
        write_series_csv(result.series, scratch / SERIES_FILE)
        for k, rho in sorted(result.snapshots.items()):
            write_rho_csv(rho, scratch / f"rho_{k}.csv")
            write_pn_csv(rho, scratch / f"pn_{k}.csv")
            files += [f"rho_{k}.csv", f"pn_{k}.csv"]
        if plots:
            files += _plots(result, scratch)
        manifest = build_manifest(cfg, result, files)
        (scratch / MANIFEST_FILE).write_text(json.dumps(manifest, indent=2) + "\n")
        for name in manifest["outputs"]:
            (scratch / name).replace(out / name)
    finally:
        shutil.rmtree(scratch, ignore_errors=True)
    return manifest
