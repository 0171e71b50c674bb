# Classify every proper element of the Z_8 x Z_8 subgroup module.
#
# The element 4Zx2Z is the separating example: primary but not pseudo-primary,
# pseudo-classical primary but not classical prime.  Each negative flag comes
# with the first violating tuple in scan order.

from latmod import classify, classify_all, gen_zn_square_module
from latmod.classify import FLAG_NAMES

M = gen_zn_square_module(8)
L = M.lattice

header = ["element"] + [name.replace("pseudo_classical_primary", "pcp")
                        .replace("pseudo_primary", "pseudo")
                        .replace("classical_prime", "classical")
                        .replace("radical_element", "radical")
                        .replace("two_absorbing", "2-abs") for name in FLAG_NAMES]
rows = [header]
for n, c in sorted(classify_all(M).items()):
    rows.append([c.label] + ["x" if c.flag(name) else "." for name in FLAG_NAMES])
widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
for r in rows:
    print("  ".join(v.ljust(w) for v, w in zip(r, widths)))

ids = {M.label(i): i for i in M.elements()}
c = classify(M, ids["4Zx2Z"])
print(f"\n4Zx2Z in detail: (N:I_M)={L.label(c.residual_top)}"
      f" sqrt={L.label(c.sqrt_residual_top)} rad={M.label(c.rad)}")
print(f"p-primary attachment: p = {L.label(c.p_primary)}")
a, X = c.witnesses["pseudo_primary"]
print(f"pseudo-primary fails at a={L.label(a)}, X={M.label(X)}:"
      f" aX = {M.label(M.act(a, X))} <= N, but a is not below (N:I_M)"
      f" and X is not below rad(N)")
a, b, K = c.witnesses["classical_prime"]
print(f"classical-prime fails at a={L.label(a)}, b={L.label(b)}, K={M.label(K)}")
