"""
Exact densities of a few toric models
=====================================

Push Lebesgue measure on a lattice polytope forward along an integer
direction, then compare the exact answer with a Monte Carlo histogram.
"""

from fractions import Fraction

from dhtoric import ToricModel, cut, dh_compute, dh_mc_oracle, logconcave_on_line, volume
from dhtoric import polytope as pt

# the unit square seen along (1, 1): a tent on [0, 2]
square = ToricModel.rank_one(pt.cube(2), (1, 1))
f = dh_compute(square)
for a, b, piece in f.density.intervals():
    print(f"  on [{a}, {b}]: {piece}")
print("mass", f.density.integrate(), "= area", volume(square.polytope))

# the cube along (1, 2, 4): seven walls, cubic pieces
cube = ToricModel.rank_one(pt.cube(3), (1, 2, 4))
g = dh_compute(cube)
print("walls", [str(w) for w in g.walls])
print("log-concave:", logconcave_on_line(g).status.value)

# a histogram with a million samples should agree to a few standard errors
points = [Fraction(k, 2) for k in range(1, 14)]
est = dh_mc_oracle(cube, 10**6, 42, points)
for t, e, s in zip(points, est.estimates, est.stderrs):
    print(f"{str(t):>5}  exact {float(g.density(t)):.4f}  mc {e:.4f}  z {(e - float(g.density(t))) / s:+.2f}")

# cutting along the direction of projection just truncates the density
half = cut(pt.cube(3), [((1, 2, 4), Fraction(3))])
print(dh_compute(ToricModel.rank_one(half, (1, 2, 4))).density == g.density.restrict(3))
