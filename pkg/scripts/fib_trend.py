"""Print the derived parse and SLP ratios along the Fibonacci words next to the recorded baseline.

    python3 scripts/fib_trend.py [--first 10] [--last 20]
"""
import argparse
import json
from dataclasses import dataclass
from pathlib import Path

from attractors.corpus import fibonacci_word
from attractors.derive import measures_report
from attractors.textcore import Text

BASELINE = Path(__file__).resolve().parent.parent / "tests" / "data" / "fib_baseline.json"


@dataclass
class Config:
    first: int = 10
    last: int = 20


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--first", type=int, default=Config.first)
    ap.add_argument("--last", type=int, default=Config.last)
    cfg = Config(**vars(ap.parse_args()))
    base = json.loads(BASELINE.read_text()) if BASELINE.exists() else {}
    print(f"{'word':<5} {'n':>6} {'gamma':>5} {'z':>4} {'r':>4} {'parse':>6} {'slp':>6} "
          f"{'p/(g lg)':>9} {'base':>6} {'s/(g lg^2)':>10} {'base':>6}")
    for k in range(cfg.first, cfg.last + 1):
        rep = measures_report(Text.from_str(fibonacci_word(k)))
        ref = base.get(f"F{k}", {})
        fmt = lambda v: f"{v:.3f}" if v is not None else "-"
        print(f"F{k:<4} {rep.n:>6} {rep.gamma_used:>5} {rep.z:>4} {rep.r:>4} {rep.parse_size:>6} {rep.slp_size:>6} "
              f"{fmt(rep.parse_ratio):>9} {fmt(ref.get('parse_ratio')):>6} "
              f"{fmt(rep.slp_ratio):>10} {fmt(ref.get('slp_ratio')):>6}")


if __name__ == "__main__":
    main()
