# %% [markdown]
# # The sharpness input
#
# f = indicator(0, 1) x sgn|y|**(-1/q).  At p = 2 the image is exactly twice
# the weight v_2(x) = |x1 x2|**(-1/2), computed here by quadrature.

# %%
import numpy as np

from homkernel import bounds as bd
from homkernel import funcspace as fs
from homkernel.plane_ops import k_apply_est1

for r in bd.sharpness_profile([1.0, 4.0, 16.0], p=2.0, analytic_hilbert=False):
    print(r.context["point"], f"value {r.context['value']:.8f}", f"ratio {r.ratio:.8f}")

# %% [markdown]
# Off p = 2 the same closed form carries the conjugate weight, so its ratio to
# v_p drifts with x2.  The input sgn|y|**(-1/p) reproduces the v_p shape exactly.

# %%
for p in (1.5, 3.0):
    q = bd.conjugate_exponent(p)
    drift = [r.ratio for r in bd.sharpness_profile([1.0, 4.0, 16.0], p=p)]
    f = fs.TensorSum2D([(fs.indicator(0, 1), fs.power(1 / p))])
    exact = [k_apply_est1(f, (1.0, x2)) / bd.v_p_weight((1.0, x2), p) for x2 in (1, 4, 16)]
    print(f"p={p}: closed-form ratios {np.round(drift, 4)}; "
          f"1/p input {np.round(exact, 6)} vs q cot(pi/2p) = {q / np.tan(np.pi / (2 * p)):.6f}")
