# Two module instances over ideal lattices: the self module (a multiplication
# module) and the subgroup lattice of Z_8 x Z_8 (not a multiplication module).
# Shows residuals in both directions, rad, varieties, and saturation.

from latmod import (
    gen_zn_self_module,
    gen_zn_square_module,
    is_faithful,
    is_multiplication_module,
    is_pg_module,
    rad,
    residual_ml,
    residual_mm,
    saturation,
    variety,
    variety_l,
)

M = gen_zn_self_module(12)
L = M.lattice
ids = {M.label(i): i for i in M.elements()}
lid = {L.label(i): i for i in L.elements()}

print("zn-self-12:",
      f"faithful={is_faithful(M)}",
      f"multiplication={is_multiplication_module(M)}",
      f"pg={is_pg_module(M)}")

N = ids["(4)"]
print(f"\n(N:a) residual: ((4):(2)) = {M.label(residual_ml(M, N, lid['(2)']))}")
print(f"(A:B) residual: ((4):(6)) = {L.label(residual_mm(M, N, ids['(6)']))}")
print(f"rad((4)) = {M.label(rad(M, N))}")
print(f"V((4)) = {[M.label(p) for p in variety(M, N)]}")
print(f"primes of L above ((4):I_M): {[L.label(p) for p in variety_l(M, N)]}")
print(f"S_p((4)) at p=(2): {M.label(saturation(M, N, lid['(2)']))}")
print(f"S_p((4)) at p=(3): {M.label(saturation(M, N, lid['(3)']))}")

# the subgroup lattice of Z_8 x Z_8 is where the interesting separations live
S = gen_zn_square_module(8)
print(f"\nzn-square-8: {S.element_count} subgroups over L(Z_8);",
      f"faithful={is_faithful(S)}",
      f"multiplication={is_multiplication_module(S)}")
sid = {S.label(i): i for i in S.elements()}
N = sid["4Zx2Z"]
print(f"N = 4Zx2Z: (N:I_M) = {S.lattice.label(residual_mm(S, N, S.top))},"
      f" rad(N) = {S.label(rad(S, N))}")
print(f"V(N) = {[S.label(p) for p in variety(S, N)]}")
