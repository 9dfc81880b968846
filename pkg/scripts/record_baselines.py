"""Record the Fibonacci measure ratios that the trend check compares against.

Run once on a fresh checkout; the acceptance suite reads the file back and only
checks drift, so rerun this only when the derivations change on purpose.

    python3 scripts/record_baselines.py [--out tests/data/fib_baseline.json]
"""
import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from attractors.corpus import fibonacci_word
from attractors.derive import measures_report
from attractors.textcore import Text

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class Config:
    first: int = 10
    last: int = 20
    out: Path = ROOT / "tests" / "data" / "fib_baseline.json"


def record(cfg: Config) -> dict:
    rows = {}
    for k in range(cfg.first, cfg.last + 1):
        t0 = time.perf_counter()
        rep = measures_report(Text.from_str(fibonacci_word(k)))
        rows[f"F{k}"] = {
            "n": rep.n,
            "gamma": rep.gamma_used,
            "gamma_source": rep.gamma_source,
            "parse_size": rep.parse_size,
            "slp_size": rep.slp_size,
            "parse_ratio": rep.parse_ratio,
            "slp_ratio": rep.slp_ratio,
        }
        print(f"F{k:<3} n={rep.n:<6} gamma={rep.gamma_used:<3} parse={rep.parse_ratio:.3f} "
              f"slp={rep.slp_ratio:.3f}  ({time.perf_counter() - t0:.2f}s)")
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Config.out)
    cfg = Config(out=ap.parse_args().out)
    rows = record(cfg)
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(json.dumps(rows, indent=2) + "\n")
    print(f"wrote {cfg.out}")


if __name__ == "__main__":
    main()
