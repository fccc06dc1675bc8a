"""Sampled RIP and LPD distortions of a Gaussian operator as m grows.

Prints one row per m and the fitted log-log slope of each estimate; both
should shrink roughly like m^(-1/2).
"""
import argparse

import numpy as np

from qcspbp import Sparse, build_gaussian, empirical_lpd, empirical_rip, fit_decay_exponent, make_map


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=256)
    parser.add_argument("--k", type=int, default=4)
    parser.add_argument("--delta", type=float, default=1.0)
    parser.add_argument("--samples", type=int, default=300)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    model = Sparse(args.n, args.k)
    ms = np.unique(np.rint(np.geomspace(4 * args.k * np.log(args.n / args.k), 8 * args.n, 8)).astype(int))
    rips, lpds = [], []
    print(f"{'m':>6} {'rip':>10} {'lpd':>10}")
    for i, m in enumerate(ms):
        op = build_gaussian(int(m), args.n, args.seed + i)
        qmap = make_map(op, args.delta, dithered=True, seed=args.seed + 1000 + i)
        rips.append(empirical_rip(op, model, args.samples, args.seed).value)
        lpds.append(empirical_lpd(qmap, model, args.samples, args.seed).value)
        print(f"{m:>6} {rips[-1]:>10.4f} {lpds[-1]:>10.4f}")
    print(f"slope rip {fit_decay_exponent(ms, rips).exponent:.3f}, "
          f"lpd {fit_decay_exponent(ms, lpds).exponent:.3f}")


if __name__ == "__main__":
    main()
