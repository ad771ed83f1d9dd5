"""Exact arithmetic at a fixed p-adic precision.

Every value is an element of Z/p^N carrying its own (p, N); nothing is
ever silently coerced, so a run either proves a congruence or fails
loudly.
"""

from anticyclo import PadicInt, binom, inv, pow_one_unit, teichmuller, val

p, N = 3, 3
print(f"working in Z/{p}^{N} = Z/{p**N}")

x = PadicInt(p, N, 18)
print(f"val(18) = {val(x)}   (18 = 2*3^2)")
print(f"val(5)  = {val(PadicInt(p, N, 5))}   (a unit)")
print(f"val(0)  = {val(PadicInt(p, N, 0))}   (only 'at least N' is knowable)")

u = PadicInt(p, N, 2)
print(f"\ninverse of 2 mod 27: {inv(u).residue}   (2*14 = 28 = 1 mod 27)")

# Teichmuller representatives: the torsion part of the units
for a in range(1, 5):
    z = teichmuller(a, 5, 2)
    print(f"teichmuller({a}) mod 25 = {z.residue:2d},  check {z.residue}^4 mod 25 = {pow(z.residue, 4, 25)}")

# principal units support p-adic exponents through the binomial series
zeta = teichmuller(2, 5, 2)
base = PadicInt(5, 2, 6)
series = pow_one_unit(base, zeta)
direct = pow(6, zeta.residue, 25)
print(f"\n6^zeta mod 25 via the series: {series.residue}; via integer power at the representative: {direct}")

# the congruence that drives the automorphism obstruction:
# (1 + p^u)^r = 1 + r p^u mod p^(u+1)
u_exp = 1
base = PadicInt(p, u_exp + 1, 1 + p**u_exp)
print(f"\n(1+{p}^{u_exp})^r mod {p**(u_exp+1)} for r = 0..8:")
print(" ", [pow_one_unit(base, r).residue for r in range(9)])
print("  1 + r*p^u:", [(1 + r * p**u_exp) % p ** (u_exp + 1) for r in range(9)])

print("\nbinomial coefficients of p-adic arguments stay integral:")
print(f"  C(-1, 3) mod 25 = {binom(-1, 3, p=5, precision=2).residue}  (i.e. -1)")
print(f"  C(zeta, 2) mod 25 = {binom(zeta, 2).residue}  (7*6/2 = 21)")
