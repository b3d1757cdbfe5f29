"""Rich Möbius maps of a finite set, counted as rich planes over a grid.

A map y = (ax + b) / (x + d) sends s to t exactly when the point (s, t, st)
of the saddle z = xy lies on the plane z - a x + d y - b = 0. Counting maps
that send many elements of A into A is counting rich planes for the grid.
"""

import sys
from fractions import Fraction as F

from quadinc import (
    eval_ngek_bound,
    grid_instance,
    incidence_graph,
    mobius_from_pairs,
    plane_of_mobius,
    rich_transformations,
)
from quadinc.crossratio import crosscheck_report

A = [F(1), F(2), F(1, 2), F(3), F(1, 3), F(4), F(1, 4)]
if len(sys.argv) > 1:
    A = [F(a) for a in sys.argv[1:]]
print("A =", [str(a) for a in A])

inversion = mobius_from_pairs([(1, 1), (2, F(1, 2)), (F(1, 2), 2)])
a, b, d = inversion.alpha, inversion.beta, inversion.delta
print(f"\nthe map fixed by 1->1, 2->1/2, 1/2->2: y = ({a}x + {b}) / (x + {d})")
grid = grid_instance(A)
G = incidence_graph(grid.points, [plane_of_mobius(inversion)])
print(f"its plane holds {len(G)} of the {len(grid.points)} grid points")

report = rich_transformations(A)
print(f"\n{len(report.transformations)} maps send at least 3 elements of A into A")
best, r = max(report.transformations, key=lambda item: item[1])
print(f"richest: y = ({best.alpha}x + {best.beta}) / (x + {best.delta}), richness {r}")
print("k, N_geq_k, N_geq_k / bound")
for k, count in report.n_geq.items():
    print(f"  {k}, {count}, {float(count / eval_ngek_bound(len(A), k)):.4f}")
print("histogram of exact richness:", report.histogram)
print("congruent pentuple pairs Q =", report.q)
print("distinct cross-ratios:", report.distinct_cross_ratios)
print("every richness matches its grid plane count:", crosscheck_report(report))
