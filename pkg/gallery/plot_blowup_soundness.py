# coding: utf-8

# # Certificates against an explicit extremal-looking family
#
# f(z) = exp(-i c / (z - i b)) is holomorphic on the strip |Im z| < b and has
# |f(x + iy)| = exp(c (b - y) / |z - i b|**2) <= exp(c / (b - y)).
# The one-sided profile c / (b - y) has distribution function min(2b, c/t),
# the same as the symmetric majorant exp(c / (2|y|)), so the Domar
# certificate of the latter applies to log|f|.

# %%

import math

import numpy as np

from loglogbound.domar import certify_bound_2d
from loglogbound.harness import GridConfig, make_boundary_blowup, measured_sup, verify_membership

cfg = GridConfig(sup_points=1001)

# %% [markdown]
# On the axis x = 0 the domination is an equality, so the sup over
# K = {|x| <= 1 - d, |y| <= b - d} is exp(c/d).  The certified bound is far
# larger: the method pays for every dyadic level.

# %%

print(f"{'c':>5} {'d':>5} {'log sup':>10} {'log bound':>10}  membership")
for c in (0.5, 1.0, 5.0):
    s = make_boundary_blowup(c, 1.0, R=1.0)
    ok = verify_membership(s).ok
    for d in (0.1, 0.25, 0.5):
        sup = measured_sup(s, (1.0 - d, 1.0 - d), cfg)
        bound = certify_bound_2d(s.majorant, d, 1.0)
        print(f"{c:5.2f} {d:5.2f} {math.log(sup):10.4f} {math.log(bound):10.4f}  {ok}")

# %% [markdown]
# Closed form check of the sup: c/d at the top of K.

# %%

print(np.isclose(math.log(measured_sup(make_boundary_blowup(1.0, 1.0), (0.5, 0.5), cfg)), 2.0))
