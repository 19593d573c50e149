"""Command-line entry point: ``micromaser --out DIR [options]``.

Exit codes: 0 success, 2 configuration error, 3 physically inconsistent
parameters, 4 numerical-integrity abort, 1 output directory not writable.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .config import build_config, load_config_file
from .errors import ConfigError, IntegrityError, PhysicsInconsistencyError
from .output import emit_outputs
from .simulator import DecayWindow, run

log = logging.getLogger("micromaser")

EXIT_OK, EXIT_CONFIG, EXIT_PHYSICS, EXIT_INTEGRITY = 0, 2, 3, 4


def _seed_phase(text: str) -> tuple[int, float]:
    idx, sep, deg = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected <block-index>=<degrees>, got {text!r}")
    try:
        return int(idx), float(deg)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <block-index>=<degrees>, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="micromaser", description="Regularly pumped micromaser with injected atomic coherence.")
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--atoms", type=int, help="number of atoms to inject")
    p.add_argument("--gamma", type=float, help="cavity loss rate in 1/s")
    p.add_argument("--lossless", action="store_true", help="set gamma to 0")
    p.add_argument("--snapshot", type=int, action="append", help="atom index to snapshot (repeatable)")
    p.add_argument("--optimize-phases", type=int, metavar="GRID", help="grid points per free seed phase")
    p.add_argument("--decay-window", choices=("full", "minus-tau"))
    p.add_argument("--seed-phase", type=_seed_phase, action="append", metavar="IDX=DEG",
                   help="seed phase of one block in degrees (repeatable)")
    p.add_argument("--no-plots", action="store_true", help="skip the SVG figures")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def overrides_from_args(args: argparse.Namespace) -> dict:
    o: dict = {}
    if args.atoms is not None:
        o["atoms"] = args.atoms
    if args.gamma is not None:
        o["gamma"] = args.gamma
    if args.lossless:
        o["gamma"] = 0.0
    if args.snapshot:
        o["snapshots"] = args.snapshot
    if args.optimize_phases is not None:
        o["optimize_phases"] = args.optimize_phases
    if args.decay_window is not None:
        o["decay_window"] = DecayWindow(args.decay_window)
    if args.seed_phase:
        o["seed_phase_overrides"] = dict(args.seed_phase)
    return o


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        settings = load_config_file(args.config) if args.config else {}
        settings.update(overrides_from_args(args))
        cfg = build_config(settings)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PhysicsInconsistencyError as exc:
        print(f"inconsistent parameters: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    log.info("g*tau = %r, N_ex = %.4f, theta_int = %.4f", cfg.g_tau, cfg.n_ex, cfg.theta_int)

    try:
        result = run(cfg)
    except PhysicsInconsistencyError as exc:
        print(f"inconsistent parameters: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except IntegrityError as exc:
        print(f"numerical integrity abort: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY

    try:
        manifest = emit_outputs(cfg, result, args.out, plots=not args.no_plots)
    except OSError as exc:
        print(f"cannot write outputs: {exc}", file=sys.stderr)
        return 1
    log.info("wrote %d files to %s", len(manifest["outputs"]), args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
