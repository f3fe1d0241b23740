"""Watch surgery lift the caressed count on the serpentine family.

The canonical serpentine cycle caresses only four dual faces, however long it
is.  Its side trees are long paths of badly caressed nodes, and once a path
holds at least 5*Delta of them, one recolouring step finds a cycle caressing
more faces.  Run: python3 demos/serpentine_surgery.py
"""

from collinear import canonical_cycle, classify, dualize, orient_and_partition, surgery_loop
from collinear.surgery import _really2_paths
from collinear.auxtrees import analyze


def main():
    print(f"{'k':>3} {'n':>4} {'len':>4} {'kappa':>5} {'|X|':>4} {'steps':>5}  after")
    for k in (12, 30, 34, 38, 39, 44, 50, 60):
        T, seq = canonical_cycle("serpentine", k)
        D = dualize(T)
        C = orient_and_partition(D, seq)
        cls = classify(D, C)
        _, pair = analyze(D, C, cls)
        longest = max((len(p) for s in (0, 1) for p in _really2_paths(pair, s)), default=0)
        final, log = surgery_loop(T, D, C)
        after = " -> ".join(str(s.kappa_after) for s in log.steps) or log.stop_reason
        print(f"{k:>3} {T.n:>4} {C.length:>4} {cls.kappa:>5} {longest:>4} {len(log.steps):>5}  {after}")
    print("\nA step needs a really^2 path of length >= 5*Delta = 30; this family reaches it at k = 39.")


if __name__ == "__main__":
    main()
