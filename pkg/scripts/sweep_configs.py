"""Run every analysis configuration over a directory of networks and print a verdict grid.

    python3 scripts/sweep_configs.py DATA_DIR [--threshold 0.5]
"""

import argparse
import itertools
from pathlib import Path

from lowkey import analyze, detect_lkl, load
from lowkey.ingest import ParseError


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("data_dir", type=Path)
    ap.add_argument("--threshold", type=float, default=0.5)
    args = ap.parse_args()

    files = sorted(p for p in args.data_dir.rglob("*") if p.is_file() and not p.name.startswith("."))
    grid = list(itertools.product(("binarized", "weighted"), (False, True), ("reversed", "original")))
    print("file,con_mode,pr_weighted,pr_orientation,epsilon_max,leaders,exists")
    for path in files:
        try:
            g = load(path)
        except (ParseError, UnicodeDecodeError) as exc:
            print(f"# skipped {path}: {exc}")
            continue
        for con_mode, weighted, orientation in grid:
            v = detect_lkl(analyze(g, con_mode=con_mode, pr_weighted=weighted, pr_orientation=orientation),
                           args.threshold)
            leaders = ";".join(n.label for n in v.leaders)
            print(f"{path.name},{con_mode},{weighted},{orientation},{v.epsilon_max:.4f},{leaders},{v.exists}")


if __name__ == "__main__":
    main()
