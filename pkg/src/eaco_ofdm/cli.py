"""Command line front end.

Subcommands:

    calibrate   solve the reference noise level and print it
    simulate    run a single operating point and print per-chord rows
    sweep       run an SNR (and bias) grid and print a result table
    spectrum    estimate the transmit power spectral density
    penalty     analytic multi-chord power penalties
    compare     grade two saved sweeps against a bit error target

Every subcommand accepts ``--config FILE`` holding ``KEY=VALUE`` lines
(``#`` comments allowed). Keys must match option names; explicit command
line flags override file values. Exit status is 0 on success, 1 for
domain errors reported on stderr, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analytics, channel, eaco, dco, experiments, spectrum

__all__ = ["main", "build_parser"]


def _grid(text: str) -> tuple[float, ...]:
    """Parse '0,2,4' or 'start:stop:step' (stop inclusive) into floats."""
    text = text.strip()
    if ":" in text:
        parts = [float(p) for p in text.split(":")]
        if len(parts) != 3:
            raise argparse.ArgumentTypeError("ranges need start:stop:step")
        start, stop, step = parts
        if step <= 0:
            raise argparse.ArgumentTypeError("step must be positive")
        values = []
        v = start
        while v <= stop + 1e-9:
            values.append(round(v, 10))
            v += step
        return tuple(values)
    return tuple(float(p) for p in text.split(",") if p.strip())


def _bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"not a boolean: '{text}'")


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", metavar="FILE",
                     help="KEY=VALUE file with defaults for this command")
    sub.add_argument("--output", metavar="PATH", default=None,
                     help="write to PATH instead of stdout")


def _add_chain_options(sub: argparse.ArgumentParser, *, seed_required: bool) -> None:
    sub.add_argument("--scheme", choices=experiments.SCHEMES, default="eaco")
    sub.add_argument("--order", type=int, default=4,
                     help="QAM order per subcarrier")
    sub.add_argument("--chords", type=int, default=3,
                     help="number of superimposed chords")
    sub.add_argument("--n-fft", type=int, default=1024)
    sub.add_argument("--band", type=int, default=64,
                     help="highest occupied bin index")
    sub.add_argument("--symbols", type=int, default=256,
                     help="transform blocks per run")
    sub.add_argument("--runs", type=int, default=5,
                     help="independent noise runs per grid point")
    sub.add_argument("--bias", type=_grid, default=(),
                     help="bias grid in dB (dco only)")
    sub.add_argument("--no-slicing", action="store_true",
                     help="disable decision feedback in chord recovery")
    sub.add_argument("--sigma-ref", type=float, default=None,
                     help="reference noise level; calibrated when omitted")
    sub.add_argument("--workers", type=int, default=1,
                     help="parallel worker processes")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--seed", type=int, required=seed_required,
                     default=None if seed_required else 0,
                     help="master seed for the sweep")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="eacosim",
        description="Unipolar optical OFDM simulator and analysis tools.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    subs: dict[str, argparse.ArgumentParser] = {}

    sub = subparsers.add_parser("calibrate",
                                help="solve the reference noise level")
    sub.add_argument("--n-fft", type=int, default=1024)
    sub.add_argument("--tolerance", type=float, default=0.01,
                     help="EVM tolerance at the anchor point, dB")
    sub.add_argument("--cache", default=None,
                     help="JSON cache path for solved levels")
    _add_common(sub)
    subs["calibrate"] = sub

    sub = subparsers.add_parser("simulate",
                                help="run one operating point")
    _add_chain_options(sub, seed_required=False)
    sub.add_argument("--snr", type=_grid, required=True,
                     help="indicated SNR in dB (single value)")
    _add_common(sub)
    subs["simulate"] = sub

    sub = subparsers.add_parser("sweep", help="run a grid of points")
    _add_chain_options(sub, seed_required=True)
    sub.add_argument("--snr", type=_grid, required=True,
                     help="SNR grid: comma list or start:stop:step")
    _add_common(sub)
    subs["sweep"] = sub

    sub = subparsers.add_parser("spectrum",
                                help="transmit power spectral density")
    sub.add_argument("--scheme", choices=experiments.SCHEMES, default="eaco")
    sub.add_argument("--order", type=int, default=4)
    sub.add_argument("--chords", type=int, default=3)
    sub.add_argument("--n-fft", type=int, default=1024)
    sub.add_argument("--band", type=int, default=64)
    sub.add_argument("--bias", type=float, default=6.2)
    sub.add_argument("--symbols", type=int, default=256)
    sub.add_argument("--blocks", type=int, default=8,
                     help="independent blocks averaged together")
    sub.add_argument("--slot-rate", type=float, default=10e9,
                     help="QAM slot rate in Hz")
    sub.add_argument("--rbw", type=float, default=100e6,
                     help="resolution bandwidth in Hz")
    sub.add_argument("--seed", type=int, default=0)
    _add_common(sub)
    subs["spectrum"] = sub

    sub = subparsers.add_parser("penalty",
                                help="analytic multi-chord power penalties")
    sub.add_argument("--max-chords", type=int, default=7)
    sub.add_argument("--band", type=int, default=64)
    sub.add_argument("--sizes", default=None,
                     help="explicit comma list of chord sizes")
    sub.add_argument("--asymptote", action="store_true",
                     help="print only the halving-chord penalty limit")
    _add_common(sub)
    subs["penalty"] = sub

    sub = subparsers.add_parser("compare",
                                help="grade saved sweeps at a BER target")
    sub.add_argument("--chord-table", required=True, metavar="PATH",
                     help="sweep output for the chord scheme")
    sub.add_argument("--bias-table", required=True, metavar="PATH",
                     help="sweep output for the biased scheme")
    sub.add_argument("--order", type=int, required=True)
    sub.add_argument("--ber", type=float, default=1e-3)
    _add_common(sub)
    subs["compare"] = sub

    return parser, subs


# ---------------------------------------------------------------------------
# config files
# ---------------------------------------------------------------------------

def _load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected KEY=VALUE")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def _apply_config(sub: argparse.ArgumentParser, path: str) -> None:
    values = _load_config(path)
    actions = {}
    for action in sub._actions:
        if action.option_strings:
            actions[action.dest] = action
    for key, text in values.items():
        dest = key.replace("-", "_").lower()
        action = actions.get(dest)
        if action is None or dest in ("config", "help"):
            sub.error(f"unknown config key '{key}' in {path}")
        if isinstance(action, argparse._StoreTrueAction):
            value = _bool(text)
        elif action.type is not None:
            try:
                value = action.type(text)
            except (TypeError, ValueError) as exc:
                sub.error(f"bad value for config key '{key}': {exc}")
        else:
            value = text
        sub.set_defaults(**{dest: value})
        action.required = False


def _scan_config(argv: list[str]) -> str | None:
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if token.startswith("--config="):
            return token.split("=", 1)[1]
    return None


# ---------------------------------------------------------------------------
# command bodies
# ---------------------------------------------------------------------------

def _spec_from_args(args: argparse.Namespace, snr: tuple[float, ...],
                    runs: int) -> experiments.ExperimentSpec:
    return experiments.ExperimentSpec(
        scheme=args.scheme,
        snr_db=snr,
        seed=args.seed,
        bias_db=args.bias,
        qam_order=args.order,
        chord_count=args.chords,
        n_fft=args.n_fft,
        band_limit=args.band,
        symbols=args.symbols,
        runs=runs,
        slicing=not args.no_slicing,
        sigma_ref=args.sigma_ref,
        workers=args.workers,
    )


def _cmd_calibrate(args) -> None:
    sigma = channel.calibrate_noise(n_fft=args.n_fft, tol_db=args.tolerance,
                                    cache_path=args.cache)
    _write(json.dumps({"n_fft": args.n_fft, "sigma_ref": sigma}) + "\n",
           args.output)


def _cmd_simulate(args) -> None:
    if len(args.snr) != 1:
        raise ValueError("simulate takes a single SNR value; use sweep "
                         "for grids")
    spec = _spec_from_args(args, args.snr, args.runs)
    rows = experiments.run_experiment(spec)
    _write(experiments.emit(rows, args.format), args.output)


def _cmd_sweep(args) -> None:
    spec = _spec_from_args(args, args.snr, args.runs)
    rows = experiments.run_experiment(spec)
    _write(experiments.emit(rows, args.format), args.output)


def _cmd_spectrum(args) -> None:
    streams = []
    for block in range(args.blocks):
        seed = experiments.derived_seed(args.seed, block, 0)
        if args.scheme == "dco":
            cfg = dco.DcoConfig(n_fft=args.n_fft,
                                n_subcarriers=args.band * 7 // 8,
                                qam_order=args.order, bias_db=args.bias,
                                symbols_per_block=args.symbols, seed=seed)
            stream, _ = dco.dco_transmit(cfg)
        else:
            count = 1 if args.scheme == "aco" else args.chords
            cfg = eaco.EacoTxConfig(
                n_fft=args.n_fft,
                chords=eaco.make_plan(count, args.band, args.order),
                symbols_per_block=args.symbols, seed=seed)
            stream, _ = eaco.transmit(cfg)
        streams.append(channel.normalize_power(stream))
    fs = spectrum.sample_rate_of(args.n_fft, args.slot_rate, args.band)
    freq, psd = spectrum.estimate_spectrum(streams, fs, args.rbw)
    lines = ["freq_Hz,psd_dB"]
    lines += [f"{repr(float(f))},{repr(float(p))}" for f, p in zip(freq, psd)]
    _write("\n".join(lines) + "\n", args.output)


def _cmd_penalty(args) -> None:
    if args.asymptote:
        _write(json.dumps(
            {"electrical_asymptote_dB": analytics.penalty_asymptote()},
        ) + "\n", args.output)
        return
    lines = ["chord_count,chord_sizes,power_ratio,optical_dB,electrical_dB"]
    if args.sizes is not None:
        sizes = tuple(int(s) for s in args.sizes.split(",") if s.strip())
        table = analytics.chord_penalty(sizes)
        lines.append(",".join([
            str(len(sizes)), ";".join(str(s) for s in sizes),
            repr(table.power_ratio), repr(table.optical_db),
            repr(table.electrical_db),
        ]))
    else:
        for count in range(1, args.max_chords + 1):
            table = analytics.penalty_for_chord_count(count, args.band)
            lines.append(",".join([
                str(count), ";".join(str(s) for s in table.chord_sizes),
                repr(table.power_ratio), repr(table.optical_db),
                repr(table.electrical_db),
            ]))
    _write("\n".join(lines) + "\n", args.output)


def _cmd_compare(args) -> None:
    eaco_rows = experiments.read_rows(args.chord_table)
    dco_rows = experiments.read_rows(args.bias_table)
    report = experiments.compare_report(eaco_rows, dco_rows,
                                        qam_order=args.order, ber=args.ber)
    _write(json.dumps(report, indent=2, default=str) + "\n", args.output)


_COMMANDS = {
    "calibrate": _cmd_calibrate,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "spectrum": _cmd_spectrum,
    "penalty": _cmd_penalty,
    "compare": _cmd_compare,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    if argv and argv[0] in subs:
        config_path = _scan_config(argv[1:])
        if config_path is not None:
            try:
                _apply_config(subs[argv[0]], config_path)
            except OSError as exc:
                print(f"eacosim: {exc}", file=sys.stderr)
                return 1
            except ValueError as exc:
                print(f"eacosim: {exc}", file=sys.stderr)
                return 1
    args = parser.parse_args(argv)
    try:
        _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"eacosim: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
