#!/usr/bin/env python3
"""End-to-end experiment: compute zeros, emit the moment report and F curve.

Usage: python scripts/run_report.py [T] [x] [outdir]
Defaults reproduce the desk-scale run at T=1000, x=20.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from szeta.cli import main as szeta_main  # noqa: E402


def run(T=1000.0, x=20.0, outdir="."):
    out = pathlib.Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    zpath = out / f"zeros_{int(T)}.txt"
    rc = szeta_main(["zeros", "--t-max", str(T + 10.0), "--out", str(zpath)])
    if rc:
        return rc
    return szeta_main([
        "report", "--t", str(T), "--x", str(x), "--zeros", str(zpath),
        "--out", str(out / "report.json"),
        "--pcf-out", str(out / "pcf.csv"),
    ])


if __name__ == "__main__":
    args = sys.argv[1:]
    T = float(args[0]) if len(args) > 0 else 1000.0
    x = float(args[1]) if len(args) > 1 else 20.0
    outdir = args[2] if len(args) > 2 else "."
    sys.exit(run(T, x, outdir))
