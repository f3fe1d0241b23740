"""A side-tree node whose pinch count grows as fast as the node inequality allows.

The pinwheel node pinches 2k+1 faces, caresses none, and has k+2 neighbours,
so rho = 2(kappa + delta) - 3 for every k: the bound is off by a constant.
Run: python3 demos/pinwheel_tightness.py
"""

from collinear import canonical_cycle, classify, dualize, orient_and_partition
from collinear.auxtrees import analyze, node_inequality_check


def main():
    for k in range(1, 7):
        T, seq = canonical_cycle("pinwheel", k)
        D = dualize(T)
        C = orient_and_partition(D, seq)
        _, pair = analyze(D, C, classify(D, C))
        node = next(u for u in pair.nodes if (u.rho, u.kappa, u.delta) == (2 * k + 1, 0, k + 2))
        print(f"k={k}: node {node.id} on side {node.side} has rho={node.rho} kappa={node.kappa} "
              f"delta={node.delta}; bound 2(kappa+delta)={2 * (node.kappa + node.delta)}; "
              f"check {'ok' if node_inequality_check(pair) else 'FAILED'}")


if __name__ == "__main__":
    main()
