# Build the ideal lattice of Z_12 and walk through the basic operations:
# order, multiplication, residuals, radicals, and element flags.

from latmod import (
    gen_zn_ideal_lattice,
    l_element_flags,
    is_pg_lattice,
    residual_ll,
    sqrt,
    stable_power,
)

L = gen_zn_ideal_lattice(12)
ids = {L.label(i): i for i in L.elements()}
print(f"L(Z_12): {L.element_count} elements:",
      " ".join(L.label(i) for i in L.elements()))
print(f"top = {L.label(L.top)}, bottom = {L.label(L.bottom)}")

a, b = ids["(4)"], ids["(2)"]
print(f"\njoin((4), (6)) = {L.label(L.join(ids['(4)'], ids['(6)']))}"
      f"   meet((4), (6)) = {L.label(L.meet(ids['(4)'], ids['(6)']))}"
      f"   (4)*(6) = {L.label(L.mul(ids['(4)'], ids['(6)']))}")

# residual (a:b) is the largest x with x*b <= a; it is adjoint to multiplication
r = residual_ll(L, a, b)
print(f"\n((4):(2)) = {L.label(r)}")
print("adjunction: x*(2) <= (4)  iff  x <= ((4):(2)) --",
      all(L.le(L.mul(x, b), a) == L.le(x, r) for x in L.elements()))

# radicals via stabilized powers
print(f"\nstable power of (2): {L.label(stable_power(L, ids['(2)']))}")
print(f"sqrt((4)) = {L.label(sqrt(L, ids['(4)']))}")
print(f"sqrt((0)) = {L.label(sqrt(L, ids['(0)']))}")

print("\nper-element flags:")
for i in L.elements():
    f = l_element_flags(L, i)
    print(f"  {L.label(i):>4}: proper={f.proper} prime={f.prime} primary={f.primary}"
          f" maximal={f.maximal} principal={f.principal} sqrt={L.label(f.sqrt)}")

print("\nprincipally generated:", is_pg_lattice(L))
