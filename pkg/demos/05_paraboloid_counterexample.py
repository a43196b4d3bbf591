"""Decoupling loss for the paraboloid over Q_p, p = 1 mod 4.

When -1 is a square mod p, the frequencies (n xi, n, 0) sit on the paraboloid
(a, b, a^2 + b^2) to cap scale, yet they are arithmetic-progression aligned,
so the wave packets f_n stack coherently: || sum f_n ||_r grows like
N^(1 + 5/r) instead of the square-root cancellation N^(1/2 + 6/r) that an
l^2-decoupling estimate would force.  The measured ratio slope approaches
1/2 - 1/r, a genuine power-law decoupling loss; at r = 2 orthogonality makes
the ratio exactly 1.
"""

from sparsemv import CounterexampleFamily, hensel_sqrt_minus_one, verify_paraboloid_membership
from sparsemv.counterexample import growth_table, log_slope

print("Hensel lifts of sqrt(-1):")
for p in (5, 13, 17):
    root = hensel_sqrt_minus_one(p, 6)
    print(f"  p={p:2d}: xi = {root.xi} (mod {p}^6), base-p digits {root.digits()}")

print("\nfrequencies lie on the paraboloid to cap scale:")
for k in (1, 2, 3):
    fam = CounterexampleFamily.build(5, k, 6.0)
    print(f"  p=5, k={k}: membership check -> {verify_paraboloid_membership(fam)}")

for r in (2.0, 4.0, 6.0):
    rows = growth_table(5, (1, 2, 3), r)
    Ns = [row["N"] for row in rows]
    print(f"\np = 5, r = {r}:")
    for row in rows:
        print(
            f"  k={row['k']}: ||f_n||_r = {row['single_norm']:10.4f}   "
            f"||sum f_n||_r = {row['sum_norm']:12.4f}   ratio = {row['ratio']:8.4f}"
        )
    if r > 2:
        s1 = log_slope(Ns, [row["sum_norm"] for row in rows])
        s2 = log_slope(Ns, [row["ratio"] for row in rows])
        print(f"  sum-norm slope {s1:.4f} (target {1 + 5/r:.4f}); "
              f"ratio slope {s2:.4f} (target {0.5 - 1/r:.4f})")
    else:
        print(f"  exact orthogonality: every ratio is 1, ||sum f||_2 = N^(7/2)")
