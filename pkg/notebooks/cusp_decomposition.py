# %% [markdown]
# # K1 = H + J on Hoelder cusps
#
# The cusp |sin(t/2)|**g has a non-smooth point at t = 0.  The plain midpoint
# rule converges like h**(1 + g) near it; the folded, graded backends do not care.

# %%
from homkernel import circle_ops as co
from homkernel import funcspace as fs

alphas = fs.circle_nodes(256)
for g in (0.25, 0.5, 0.75):
    phi = fs.holder_cusp(g)
    w = fs.HolderWitness(g, fs.holder_cusp_seminorm(g))
    folded = co.k1_decomposition_check(phi, w, alphas=alphas, hilbert_backend="regularized",
                                       k1_backend="regularized")
    row = [co.k1_decomposition_check(phi, w, 2 ** e, alphas=alphas) for e in (10, 12, 14)]
    print(f"g={g}: folded {folded:.1e}; midpoint N=2^10,2^12,2^14: "
          + ", ".join(f"{v:.2e}" for v in row))

# %% [markdown]
# Each factor of 4 in N should shrink the midpoint residual by about 4**(1 + g).
