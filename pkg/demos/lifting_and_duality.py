"""Two incidence-preserving transforms.

Lifting sends planar points to the paraboloid z = x^2 + y^2 and circles to
planes, so a point lies on a circle exactly when its lift lies on the plane.
Duality swaps points and non-vertical planes while keeping every incidence.
"""

from fractions import Fraction as F

from quadinc import (
    PARABOLOID,
    Circle2,
    Point3,
    curve_pair_intersections,
    dualize_plane,
    dualize_point,
    incidence_graph,
    lift_circle,
    lift_point,
)

circles = [Circle2((F(0), F(0)), F(25)), Circle2((F(3), F(0)), F(16)), Circle2((F(10), F(10)), F(1))]
points = [(F(3), F(4)), (F(-5), F(0)), (F(3), F(-4)), (F(10), F(11)), (F(1), F(1))]



def show(v) -> str:
    return "(" + ", ".join(str(c) for c in v) + ")"


print("planar incidences:")
for c in circles:
    on = " ".join(show(p) for p in points if c.contains(p))
    print(f"  circle centered {show(c.center)} with r^2 = {c.radius_squared}: {on}")

lifted_points = [lift_point(p) for p in points]
planes = [lift_circle(c) for c in circles]
G = incidence_graph(lifted_points, planes)
print("\nlifted point-plane incidences:", list(G.edges))

print("\ntwo circles meet where the line of their two planes crosses the paraboloid:")
for i in range(len(planes)):
    for j in range(i + 1, len(planes)):
        print(f"  circles {i},{j}: {curve_pair_intersections(planes[i], planes[j], PARABOLOID)} common points")

duals = [dualize_point(p) for p in lifted_points]
dual_points = [dualize_plane(h) for h in planes]
G_dual = incidence_graph(dual_points, duals)
swapped = sorted((j, i) for i, j in G_dual.edges)
print("\ndual incidences, indices swapped back:", swapped)
print("same as the lifted graph:", swapped == list(G.edges))
print("dualizing twice returns the point:", dualize_plane(dualize_point(Point3.of(1, 2, 3))) == Point3.of(1, 2, 3))
