"""Collinear sets across the generated corpus.

For each instance the pipeline picks a long dual cycle, tries surgery, and
turns the caressed faces into a verified collinear set S.  The table shows how
|S| compares with the guaranteed kappa/6 and with n.
Run: python3 demos/corpus_certificates.py [max_n]
"""

import math
import sys
from collections import defaultdict

from collinear import run_pipeline
from collinear.generators import corpus


def main(max_n=40):
    by_kind = defaultdict(list)
    for name, T in corpus(max_n=max_n):
        cert, report, _, _ = run_pipeline(T)
        assert all(report.checks.values()), (name, report.checks)
        by_kind[name.split("(")[0]].append((T.n, report.kappa_final, len(cert.S)))
    print(f"{'kind':<12} {'count':>5} {'mean n':>7} {'mean kappa':>10} {'mean |S|':>9} {'min |S|/ceil(k/6)':>18}")
    for kind, rows in sorted(by_kind.items()):
        ratio = min(s / max(1, math.ceil(k / 6)) for _, k, s in rows)
        mean = lambda i: sum(r[i] for r in rows) / len(rows)
        print(f"{kind:<12} {len(rows):>5} {mean(0):>7.1f} {mean(1):>10.1f} {mean(2):>9.1f} {ratio:>18.2f}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 40)
