"""Run the four preset sweeps, write CSV + SVG per preset and print fitted exponents.

    python scripts/run_all_experiments.py --out-dir results --jobs 4
"""
import argparse
import dataclasses
import time

from qcspbp.harness import preset, run_experiment
from qcspbp.harness.runner import summary_lines


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="results")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("presets", nargs="*", default=["exp-a", "exp-b", "exp-c", "exp-d"])
    args = parser.parse_args()

    for name in args.presets:
        cfg = preset(name)
        cfg = dataclasses.replace(cfg, seed=args.seed)
        start = time.perf_counter()
        out = run_experiment(cfg, out_dir=args.out_dir, jobs=args.jobs, timestamp=False, plot=True)
        print(f"== {name} ({len(out.records)} trials, {time.perf_counter() - start:.1f}s) -> {out.csv_path}")
        for line in summary_lines(out.sweep):
            if line.startswith(("fit", "check")):
                print("   " + line)


if __name__ == "__main__":
    main()
