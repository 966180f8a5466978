# coding: utf-8

# # The dyadic sum and its minimal constant
#
# A subharmonic function on a strip of half-width b, dominated by log M(|y|),
# stays below C at distance d from the boundary as soon as
#
#     S(C) = (8/pi) * sum_{i >= -1} F(2**i C) < d,
#
# where F(t) is the measure of {y : log+ M(|y|) >= t}.  This script tabulates
# S(C) for three majorants and finds the smallest admissible C.

# %%

import math

import numpy as np

from loglogbound import Constant, DoubleExpBlowup, ExpBlowup, domar_sum, minimal_constant

majorants = {
    "constant e": Constant(math.e),
    "exp(1/y)": ExpBlowup(1.0),
    "exp(exp(y^-1/2))": DoubleExpBlowup(0.5),
}

# %% [markdown]
# S(C) is non-increasing in C.  For the constant majorant it is a step
# function that drops to zero once C/2 exceeds log e = 1.

# %%

Cs = np.array([0.5, 1.0, 2.5, 10.0, 40.0, 100.0])
print(f"{'C':>8}" + "".join(f"{name:>20}" for name in majorants))
for C in Cs:
    row = [domar_sum(m, C, 1.0).value for m in majorants.values()]
    print(f"{C:8.2f}" + "".join(f"{v:20.6f}" for v in row))

# %% [markdown]
# Minimal constants.  exp(1/y) has F(t) = 2/t for t >= 1, so the sum is
# 64/(pi C) and the threshold d = 0.5 gives C* = 128/pi.

# %%

for (name, m), d in zip(majorants.items(), (0.5, 0.5, 3.0)):
    cert = minimal_constant(m, d, 1.0)
    print(f"{name:>18}: d = {d}, C* = {cert.C:.8f}, bound exp(C*) = {cert.bound:.6g}")
print(f"{'128/pi':>18}: {128 / math.pi:.8f}")
