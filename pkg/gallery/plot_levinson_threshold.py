# coding: utf-8

# # Approaching the log-log threshold
#
# M(y) = exp(exp(y**-alpha)) has log+ log+ M = y**-alpha, which is integrable
# exactly when alpha < 1.  Certificates exist for every alpha below 1 but grow
# without bound as alpha approaches 1; at alpha = 1 the pipeline refuses.

# %%

import math

from loglogbound import CylinderSpec, DoubleExpBlowup, LevinsonConditionFails, certify_bound, loglog_integral

spec = CylinderSpec(n=4, R=1.0, H=1.0, eps=0.5)

# %% [markdown]
# The bound itself overflows binary64 quickly, so we print log log of the
# bound, which the certificate always carries.

# %%

for alpha in (0.1, 0.25, 0.5, 0.7, 0.8, 0.9):
    integral, _ = loglog_integral(DoubleExpBlowup(alpha))
    cert = certify_bound(spec, DoubleExpBlowup(alpha))
    shown = f"{cert.final_bound:.4g}" if cert.final_bound is not None else "overflow"
    print(f"alpha={alpha:4.2f}  integral={integral:8.4f}  log log bound={cert.loglog_bound:12.6g}  bound={shown}")

# %%

try:
    certify_bound(spec, DoubleExpBlowup(1.0))
except LevinsonConditionFails as exc:
    print("alpha=1.00 ->", exc)
