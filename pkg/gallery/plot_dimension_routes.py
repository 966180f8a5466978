# coding: utf-8

# # How each dimension reaches the planar estimate
#
# Low dimensions gain fake coordinates until n = 4, where rho * u is an odd
# planar harmonic function and its gradient is holomorphic.  Odd n = 2k + 3
# lift to a complex harmonic field in R^3 and divide a k-th derivative bound by
# k!.  Even n >= 6 add one coordinate first.

# %%

import math

from loglogbound import Constant, CylinderSpec, certify_bound, replay

m = Constant(math.e)

for n in range(2, 8):
    cert = certify_bound(CylinderSpec(n, 1.0, 1.0, 0.5), m)
    print(f"n={n}: {' -> '.join(cert.route):<70} log bound = {cert.log_bound:.6f}")

# %% [markdown]
# Every certificate can be replayed from its recorded stages alone.

# %%

cert = certify_bound(CylinderSpec(7, 1.0, 1.0, 0.5), m)
print(replay(cert) == cert.log_bound)
for st in cert.stages:
    print(f"  {st.name:16s} {st.majorant_in:40s} {st.constants}")
