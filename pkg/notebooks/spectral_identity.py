# %% [markdown]
# # The circle operator K1 on Fourier modes
#
# K1 acts on e_k as a multiplier: -2i sgn(k) on odd modes, zero on even ones.
# The midpoint PV rule recovers this to rounding level.

# %%
import numpy as np

from homkernel import circle_ops as co
from homkernel import funcspace as fs

N = 2048
for k in range(-5, 6):
    img = co.k1_apply_quadrature(fs.trigpoly({k: 1.0}), N)
    ek = fs.trigpoly({k: 1.0})(img.nodes)
    m = img.values[0] / ek[0]
    err = np.max(np.abs(img.values - co.k1_multiplier(k) * ek))
    print(f"k={k:+d}  m(k)={m.real:+.3f}{m.imag:+.3f}i  max err {err:.1e}")

# %% [markdown]
# The multiplier splits into the circle Hilbert transform and the compact part J.

# %%
ks = np.arange(-6, 7)
print(np.column_stack([ks, co.hilbert_multiplier(ks).imag, co.j_multiplier(ks).imag,
                       co.k1_multiplier(ks).imag]))

# %% [markdown]
# L2 norm: the largest multiplier modulus is 2, attained on every odd mode.

# %%
print(np.max(np.abs(co.k1_multiplier(np.arange(-64, 65)))))
