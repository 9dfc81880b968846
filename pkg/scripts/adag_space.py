"""A-DAG space and hop counts over the corpus for several tau and word sizes.

    python3 scripts/adag_space.py [--max-len 2000] [--tau 2 4 8] [--w 1 8 64]
"""
import argparse
from dataclasses import dataclass, field

from attractors.adag import build_adag, extract_with_stats, space_report
from attractors.corpus import corpus
from attractors.textcore import Text, build_index
from attractors.treeattr import greedy_string_attractor


@dataclass
class Config:
    max_len: int = 2000
    tau: list = field(default_factory=lambda: [2, 4, 8])
    w: list = field(default_factory=lambda: [1, 8, 64])
    probes: int = 200


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-len", type=int, default=Config.max_len)
    ap.add_argument("--tau", type=int, nargs="+", default=Config().tau)
    ap.add_argument("--w", type=int, nargs="+", default=Config().w)
    ap.add_argument("--probes", type=int, default=Config.probes)
    cfg = Config(**vars(ap.parse_args()))
    print(f"{'string':<24} {'n':>5} {'g':>3} {'tau':>3} {'w':>3} {'lvls':>4} {'words':>6} {'bound':>7} "
          f"{'ratio':>6} {'hops':>4}")
    for name, s in corpus(cfg.max_len):
        t = Text.from_str(s)
        idx = build_index(t)
        g = greedy_string_attractor(t)
        for tau in cfg.tau:
            for w in cfg.w:
                d = build_adag(t, idx, g, tau=tau, w=w)
                rep = space_report(d)
                step = max(1, t.n // cfg.probes)
                hops = max(extract_with_stats(d, i, 1)[1].max_hops for i in range(1, t.n + 1, step))
                print(f"{name:<24} {t.n:>5} {g.gamma:>3} {tau:>3} {w:>3} {rep.levels:>4} {rep.total_words:>6} "
                      f"{rep.bound_words:>7} {rep.ratio:>6.2f} {hops:>4}")


if __name__ == "__main__":
    main()
