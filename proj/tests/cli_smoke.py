"""End-to-end CLI checks: exit codes, report values, byte-identical reruns."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = sys.argv[1]


def run(*args, expect=0):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        sys.exit(f"expected exit {expect}, got {proc.returncode}: {proc.stderr}")
    return proc


def main():
    tmp = Path(tempfile.mkdtemp())
    csv = tmp / "points.csv"
    csv.write_text("# unit square corners plus center\n0,0\n1,0\n1,1\n0,1\n0.5,0.5\n")

    out1 = tmp / "report1.json"
    out2 = tmp / "report2.json"
    base = ["--shape", "rect", "--objective", "area", "--orientation", "any",
            "--input", str(csv)]
    run(*base, "--output", str(out1))
    run(*base, "--output", str(out2))
    if out1.read_bytes() != out2.read_bytes():
        sys.exit("reports differ between identical runs")

    report = json.loads(out1.read_text())
    if abs(report["area"] - 0.5) > 1e-9:
        sys.exit(f"unexpected area: {report['area']}")
    if report["n"] != 5 or not report["version"]:
        sys.exit("bad report fields")

    svg = tmp / "fig.svg"
    run("--shape", "square", "--objective", "width", "--orientation", "fixed:0",
        "--input", str(csv), "--output", str(tmp / "w.json"), "--svg", str(svg))
    if "<svg" not in svg.read_text():
        sys.exit("svg not written")
    w = json.loads((tmp / "w.json").read_text())
    if abs(w["width"] - 0.5) > 1e-9:
        sys.exit(f"unexpected width: {w['width']}")

    # Thread count must not change the bytes.
    t1 = tmp / "t1.json"
    t4 = tmp / "t4.json"
    run(*base, "--threads", "1", "--output", str(t1))
    run(*base, "--threads", "4", "--output", str(t4))
    if t1.read_bytes() != t4.read_bytes():
        sys.exit("reports differ across thread counts")

    run("--shape", "square", "--objective", "largest", "--orientation", "any",
        "--input", str(csv), expect=3)
    run("--shape", "square", "--objective", "width", "--orientation", "fixed:0",
        "--input", str(tmp / "missing.csv"), expect=2)

    bad = tmp / "bad.csv"
    bad.write_text("0,0\n1;1\n")
    run("--shape", "square", "--objective", "width", "--orientation", "fixed:0",
        "--input", str(bad), expect=2)

    print("cli smoke ok")


if __name__ == "__main__":
    main()
