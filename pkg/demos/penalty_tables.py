"""Analytic cost of layering clipped chords.

Splitting a band into independently clipped chords raises the mean
optical power needed for a given per-subcarrier electrical SNR: the
clipped chords add in optical power like sum(sqrt(N_c)) rather than
sqrt(sum(N_c)). This script prints the penalty for 1..7 chords on a
64-slot band, the limit for infinitely many halving chords, and the
resulting SNR-cost-versus-spectral-efficiency trade against unipolar
PAM, with reported positions of other layered schemes for context.
"""

from eaco_ofdm import (
    LITERATURE_POINTS,
    evm_target_nearest_neighbor,
    evm_target_for_ber,
    penalty_asymptote,
    penalty_for_chord_count,
    snr_cost_curve,
)


def main():
    print("chord penalty on a 64-slot band (unit mean optical power)")
    print(f"{'chords':>6} {'sizes':>22} {'ratio':>8} {'optical dB':>11} {'electrical dB':>14}")
    for count in range(1, 8):
        t = penalty_for_chord_count(count)
        sizes = "+".join(str(s) for s in t.chord_sizes)
        print(f"{count:>6} {sizes:>22} {t.power_ratio:>8.4f} "
              f"{t.optical_db:>11.4f} {t.electrical_db:>14.4f}")
    print(f"halving-chord limit: {penalty_asymptote():.4f} dB electrical\n")

    print("EVM needed for BER 1e-3 (closed form vs Monte-Carlo inversion)")
    print(f"{'order':>6} {'closed form dB':>15} {'monte carlo dB':>15}")
    for order in (4, 16, 64, 256, 1024):
        closed = evm_target_nearest_neighbor(order, 1e-3)
        mc = evm_target_for_ber(order, 1e-3)
        print(f"{order:>6} {closed:>15.3f} {mc:>15.3f}")
    print()

    print("extra SNR over the single-chord 4-QAM reference, at BER 1e-3")
    print(f"{'scheme':>8} {'order':>6} {'SE bit/s/Hz':>12} {'cost dB':>9}")
    for scheme in ("aco", "eaco", "pam"):
        for p in snr_cost_curve(scheme):
            print(f"{p.scheme:>8} {p.order:>6} {p.spectral_efficiency:>12.2f} "
                  f"{p.cost_db:>9.3f}")
    print("\nreported positions of other layered unipolar schemes:")
    for name, points in LITERATURE_POINTS.items():
        print(f"  {name}: {points}")


if __name__ == "__main__":
    main()
