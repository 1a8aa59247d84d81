"""Sweep harness: seeded experiment runs, result tables, comparisons.

Every (sweep point, run) pair gets its own seed derived from the master
seed, so points are independent and any execution order, including a
worker pool, produces the same table. Rows are emitted in a fixed order
and floats are serialized with shortest round-trip formatting, making
equal-seed outputs byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import channel, dco, eaco, metrics

__all__ = [
    "ExperimentSpec",
    "ResultRow",
    "CSV_COLUMNS",
    "derived_seed",
    "run_experiment",
    "required_snr",
    "pooled_curve",
    "dco_envelope",
    "compare_report",
    "emit",
    "read_rows",
]

CSV_COLUMNS = ("scheme", "snr_dB", "bias_dB", "chord", "evm_dB", "q_dB",
               "ber", "seed", "symbols")

SCHEMES = ("aco", "eaco", "dco")


@dataclass(frozen=True)
class ExperimentSpec:
    """One sweep: a scheme, its grid, and everything needed to rerun it."""

    scheme: str
    snr_db: tuple[float, ...]
    seed: int
    bias_db: tuple[float, ...] = ()
    qam_order: int = 4
    chord_count: int = 3
    n_fft: int = 1024
    band_limit: int = 64
    symbols: int = 256
    runs: int = 5
    slicing: bool = True
    sigma_ref: float | None = None
    workers: int = 1

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme '{self.scheme}'")
        if not self.snr_db:
            raise ValueError("empty SNR grid")
        if self.scheme == "dco" and not self.bias_db:
            raise ValueError("dco sweeps need a bias grid")
        if any(b <= a for a, b in zip(self.snr_db, self.snr_db[1:])):
            raise ValueError("SNR axis must be strictly increasing")
        if self.runs < 1 or self.symbols < 1 or self.workers < 1:
            raise ValueError("runs, symbols and workers must be positive")


@dataclass
class ResultRow:
    scheme: str
    snr_db: float
    bias_db: float | None
    chord: int | None
    evm_db: float
    q_db: float
    ber: float
    seed: int
    symbols: int


def derived_seed(master: int, point_index: int, run_index: int) -> int:
    """Stable per-(point, run) seed mixed from the master seed."""
    ss = np.random.SeedSequence((master, point_index, run_index))
    return int(ss.generate_state(1, np.uint64)[0])


def _points(spec: ExperimentSpec) -> list[tuple[float, float | None]]:
    if spec.scheme == "dco":
        return [(snr, bias) for snr in spec.snr_db for bias in spec.bias_db]
    return [(snr, None) for snr in spec.snr_db]


def _resolve_sigma(spec: ExperimentSpec) -> float:
    if spec.sigma_ref is not None:
        return spec.sigma_ref
    return channel.calibrate_noise(n_fft=spec.n_fft)


def _run_point(spec: ExperimentSpec, sigma_ref: float, point_index: int,
               run_index: int) -> list[ResultRow]:
    snr, bias = _points(spec)[point_index]
    seed = derived_seed(spec.seed, point_index, run_index)
    noise = channel.NoiseModel(sigma_ref=sigma_ref, snr_db=snr, seed=seed + 1)

    if spec.scheme == "dco":
        cfg = dco.DcoConfig(
            n_fft=spec.n_fft,
            n_subcarriers=spec.band_limit * 7 // 8,
            qam_order=spec.qam_order,
            bias_db=float(bias),
            symbols_per_block=spec.symbols,
            seed=seed,
        )
        stream, record = dco.dco_transmit(cfg)
        stream = channel.normalize_power(stream)
        report = dco.dco_receive(channel.add_awgn(stream, noise), cfg, record)
        return [ResultRow("dco", snr, float(bias), None, report.evm_db,
                          report.q_db, report.ber, seed, spec.symbols)]

    chord_count = 1 if spec.scheme == "aco" else spec.chord_count
    cfg = eaco.EacoTxConfig(
        n_fft=spec.n_fft,
        chords=eaco.make_plan(chord_count, spec.band_limit, spec.qam_order),
        symbols_per_block=spec.symbols,
        seed=seed,
    )
    stream, record = eaco.transmit(cfg)
    stream = channel.normalize_power(stream)
    report = eaco.receive(channel.add_awgn(stream, noise), cfg, record,
                          slicing=spec.slicing)
    return [
        ResultRow(spec.scheme, snr, None, r.chord_index, r.evm_db, r.q_db,
                  r.ber, seed, spec.symbols)
        for r in report.chords
    ]


def _task(args):
    spec, sigma_ref, point_index, run_index = args
    return point_index, run_index, _run_point(spec, sigma_ref, point_index, run_index)


def run_experiment(spec: ExperimentSpec) -> list[ResultRow]:
    """Run the whole grid and return rows in deterministic order."""
    sigma_ref = _resolve_sigma(spec)
    jobs = [
        (spec, sigma_ref, p, r)
        for p in range(len(_points(spec)))
        for r in range(spec.runs)
    ]
    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            finished = list(pool.map(_task, jobs))
    else:
        finished = [_task(j) for j in jobs]
    finished.sort(key=lambda item: (item[0], item[1]))
    rows: list[ResultRow] = []
    for _, _, chunk in finished:
        rows.extend(chunk)
    return rows


# ---------------------------------------------------------------------------
# aggregation and comparison
# ---------------------------------------------------------------------------

def _pooled_q(rows: list[ResultRow]) -> dict[tuple, float]:
    """Pool linear error power across runs for identical grid points."""
    acc: dict[tuple, list[float]] = {}
    for row in rows:
        acc.setdefault((row.snr_db, row.bias_db, row.chord), []).append(row.evm_db)
    return {
        key: -10.0 * np.log10(np.mean([10.0 ** (v / 10.0) for v in vals]))
        for key, vals in acc.items()
    }


def required_snr(snr_axis: list[float], q_axis: list[float],
                 q_target: float) -> float | None:
    """First SNR at which the quality curve crosses the target, interpolated."""
    for i in range(1, len(snr_axis)):
        if q_axis[i - 1] < q_target <= q_axis[i]:
            frac = (q_target - q_axis[i - 1]) / (q_axis[i] - q_axis[i - 1])
            return snr_axis[i - 1] + frac * (snr_axis[i] - snr_axis[i - 1])
    if q_axis and q_axis[0] >= q_target:
        return snr_axis[0]
    return None


def _chord_curves(rows: list[ResultRow]) -> dict[int, tuple[list[float], list[float]]]:
    pooled = _pooled_q(rows)
    chords = sorted({k[2] for k in pooled})
    out = {}
    for c in chords:
        pts = sorted((k[0], q) for k, q in pooled.items() if k[2] == c)
        out[c] = ([p[0] for p in pts], [p[1] for p in pts])
    return out


def pooled_curve(rows: list[ResultRow]) -> tuple[list[float], list[float]]:
    """Whole-scheme quality curve: all rows at one SNR pooled together."""
    acc: dict[float, list[float]] = {}
    for row in rows:
        acc.setdefault(row.snr_db, []).append(row.evm_db)
    snrs = sorted(acc)
    qs = [
        -10.0 * np.log10(np.mean([10.0 ** (v / 10.0) for v in acc[s]]))
        for s in snrs
    ]
    return snrs, qs


def dco_envelope(rows: list[ResultRow]) -> tuple[list[float], list[float], list[float]]:
    """Per-SNR best quality over the bias grid: (snr, q, best_bias)."""
    acc: dict[tuple, list[float]] = {}
    for row in rows:
        acc.setdefault((row.snr_db, row.bias_db), []).append(row.evm_db)
    by_snr: dict[float, list[tuple[float, float]]] = {}
    for (snr, bias), vals in acc.items():
        q = -10.0 * np.log10(np.mean([10.0 ** (v / 10.0) for v in vals]))
        by_snr.setdefault(snr, []).append((q, bias))
    snrs = sorted(by_snr)
    qs, biases = [], []
    for snr in snrs:
        q, bias = max(by_snr[snr])
        qs.append(q)
        biases.append(bias)
    return snrs, qs, biases


def compare_report(eaco_rows: list[ResultRow], dco_rows: list[ResultRow], *,
                   qam_order: int, ber: float = 1e-3) -> dict:
    """Required-SNR comparison of a chord table against a bias-sweep table.

    The chord system is graded on its pooled quality curve, with the
    per-chord requirements reported alongside; the biased system is
    graded at the best bias per SNR. Also reports the SNR past which
    every chord beats the biased envelope, when the grids overlap.
    """
    q_target = -metrics.evm_target_for_ber(qam_order, ber)
    curves = _chord_curves(eaco_rows)
    per_chord = {}
    for c, (snrs, qs) in curves.items():
        per_chord[c] = required_snr(snrs, qs, q_target)
    if any(v is None for v in per_chord.values()):
        raise ValueError("EVM target outside the chord table's swept range")
    eaco_req = required_snr(*pooled_curve(eaco_rows), q_target=q_target)
    if eaco_req is None:
        raise ValueError("EVM target outside the chord table's swept range")

    denv = dco_envelope(dco_rows)
    dco_req = required_snr(denv[0], denv[1], q_target)
    if dco_req is None:
        raise ValueError("EVM target outside the bias table's swept range")

    # crossover: first common-grid SNR from which every chord stays above
    # the biased envelope
    common = sorted(set(denv[0]).intersection(curves[min(curves)][0]))
    dco_q = dict(zip(denv[0], denv[1]))
    crossover = None
    for snr in reversed(common):
        worst = min(dict(zip(*curves[c]))[snr] for c in curves)
        if worst >= dco_q[snr]:
            crossover = snr
        else:
            break

    return {
        "qam_order": qam_order,
        "ber_target": ber,
        "q_target_db": q_target,
        "chord_required_snr_db": per_chord,
        "eaco_required_snr_db": eaco_req,
        "dco_required_snr_db": dco_req,
        "advantage_db": dco_req - eaco_req,
        "crossover_snr_db": crossover,
    }


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit(rows: list[ResultRow], fmt: str = "csv") -> str:
    """Serialize rows as csv or json text with a stable layout."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([
                _cell(row.scheme), _cell(row.snr_db), _cell(row.bias_db),
                _cell(row.chord), _cell(row.evm_db), _cell(row.q_db),
                _cell(row.ber), _cell(row.seed), _cell(row.symbols),
            ])
        return buf.getvalue()
    if fmt == "json":
        payload = [
            dict(zip(CSV_COLUMNS, (row.scheme, row.snr_db, row.bias_db,
                                   row.chord, row.evm_db, row.q_db, row.ber,
                                   row.seed, row.symbols)))
            for row in rows
        ]
        return json.dumps(payload, indent=2) + "\n"
    raise ValueError(f"unknown output format '{fmt}'")


def read_rows(path: str) -> list[ResultRow]:
    """Load a result table written by emit (format from the content)."""
    with open(path) as fh:
        text = fh.read()
    rows = []
    if text.lstrip().startswith("["):
        for item in json.loads(text):
            rows.append(ResultRow(
                scheme=item["scheme"],
                snr_db=float(item["snr_dB"]),
                bias_db=None if item["bias_dB"] is None else float(item["bias_dB"]),
                chord=None if item["chord"] is None else int(item["chord"]),
                evm_db=float(item["evm_dB"]),
                q_db=float(item["q_dB"]),
                ber=float(item["ber"]),
                seed=int(item["seed"]),
                symbols=int(item["symbols"]),
            ))
        return rows
    reader = csv.DictReader(io.StringIO(text))
    for item in reader:
        rows.append(ResultRow(
            scheme=item["scheme"],
            snr_db=float(item["snr_dB"]),
            bias_db=float(item["bias_dB"]) if item["bias_dB"] else None,
            chord=int(item["chord"]) if item["chord"] else None,
            evm_db=float(item["evm_dB"]),
            q_db=float(item["q_dB"]),
            ber=float(item["ber"]),
            seed=int(item["seed"]),
            symbols=int(item["symbols"]),
        ))
    return rows
