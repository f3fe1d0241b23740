"""Draw a triangulation with its dual cycle and collinear set.

Caressed regions are teal, pinched ones pink, the cycle is purple, and the
vertices of S are large red dots.  Run: python3 demos/draw_instance.py out.svg
"""

import sys

from collinear import dualize, run_pipeline
from collinear.generators import generate
from collinear.render import render_svg


def main(path="instance.svg"):
    T = generate("random_stacked", {"n": 30}, seed=3)
    cert, report, C, _ = run_pipeline(T)
    with open(path, "w") as fh:
        fh.write(render_svg(T, dualize(T), C, S=cert.S))
    print(f"n={T.n}, cycle length {C.length}, kappa {report.kappa_final}, |S|={len(cert.S)}: wrote {path}")


if __name__ == "__main__":
    main(*sys.argv[1:])
