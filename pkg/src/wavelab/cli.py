"""``wave-lab`` command line: run scenario files, list scenario kinds."""

from __future__ import annotations

import argparse
import json
import math
import os
import platform
import sys
from pathlib import Path

import numpy as np
import scipy

from . import __version__, kernels
from .errors import ConfigParseError, ScenarioFailed
from .scenarios import KINDS, Result, Scenario, load_config, run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_FAILED = 3


def _clean(x):
    """JSON-safe copy: numpy scalars to Python, non-finite reals to strings."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else repr(x)
    return x


def _dump(path: Path, obj) -> None:
    path.write_text(json.dumps(_clean(obj), indent=2, sort_keys=True) + "\n", encoding="utf-8")


def write_artifacts(sc: Scenario, res: Result, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "series.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("diagnostic,x,y\n")
        for name, x, y in res.series:
            fh.write(f"{name},{x:.17g},{y:.17g}\n")
    summary = dict(res.summary)
    summary["checks"] = res.checks
    summary["passed"] = not res.failed
    _dump(out / "summary.json", summary)
    meta = {
        "config": sc.resolved(),
        "grid": res.grid,
        "versions": {
            "wavelab": __version__,
            "backend": kernels.BACKEND,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": platform.python_version(),
        },
    }
    _dump(out / "meta.json", meta)


def run_scenario(config_path, out_dir: str | None = None) -> tuple[int, Path | None]:
    """Run one scenario file and write its artifacts.

    Returns the exit status and the output directory. ``WAVELAB_OUT``
    overrides the configured directory unless ``out_dir`` is given.
    """
    try:
        sc = load_config(config_path)
    except ConfigParseError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG, None
    out = Path(out_dir or os.environ.get("WAVELAB_OUT") or sc.output_dir)
    try:
        res = run(sc)
    except ConfigParseError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG, None
    write_artifacts(sc, res, out)
    if res.failed:
        err = ScenarioFailed(f"{sc.name}: failed checks {', '.join(res.failed)}")
        print(f"scenario failed: {err}", file=sys.stderr)
        return EXIT_FAILED, out
    print(f"{sc.name}: ok ({len(res.checks)} checks) -> {out}")
    return EXIT_OK, out


def list_scenarios(as_json: bool = False) -> str:
    if as_json:
        return json.dumps({k: v.statement for k, v in KINDS.items()}, indent=2)
    width = max(len(k) for k in KINDS)
    return "\n".join(f"{k:<{width}}  {v.statement}" for k, v in KINDS.items())


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="wave-lab", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)
    p_run = sub.add_parser("run", help="run a scenario file")
    p_run.add_argument("config")
    p_list = sub.add_parser("list", help="list scenario kinds")
    p_list.add_argument("--json", action="store_true", help="machine-readable catalog")
    sub.add_parser("version", help="print the package version")
    args = ap.parse_args(argv)
    if args.cmd == "run":
        return run_scenario(args.config)[0]
    if args.cmd == "list":
        print(list_scenarios(args.json))
        return EXIT_OK
    print(f"wave-lab {__version__} ({kernels.BACKEND} kernels)")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
