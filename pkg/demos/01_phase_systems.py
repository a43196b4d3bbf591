"""Trace-expanded phase systems from number fields.

A degree-d field Q(alpha) turns the moment curve into a d*k-component system
of homogeneous polynomials: component (j, l) expands
Tr((n_0 + n_1 alpha + ... + n_{d-1} alpha^{d-1})^j alpha^l).  This script
builds the classic examples and shows the exact coefficient data.
"""

from sparsemv import (
    MinimalPolynomial,
    epsilon_table,
    evaluate_phase,
    expand_trace_phase,
    moment_curve,
    trace_power,
)


def show(system, title):
    print(f"\n{title}")
    for comp in system.components:
        terms = " + ".join(
            f"{t.coefficient}*n^{t.exponents}" for t in comp.terms
        )
        print(f"  (j={comp.j}, l={comp.ell})  scale={comp.scale}:  {terms}")


# The rational line (d = 1) recovers the plain moment curve n, n^2, n^3.
show(moment_curve(3), "moment curve (P = x, d = 1, k = 3)")

# Gaussian integers: P = x^2 + 1.  The trace sequence Tr(i^kappa) alternates
# 2, 0, -2, 0, ... which the sign table epsilon encodes as half-traces.
gauss = MinimalPolynomial.parse("1,0")
show(expand_trace_phase(gauss, 3), "Q(i) (P = x^2 + 1, k = 3)")
print("\n  epsilon table vs traces:")
for kappa in range(8):
    print(
        f"    kappa={kappa}: Tr(i^kappa) = {trace_power(gauss, kappa)}, "
        f"2*epsilon = {2 * epsilon_table(0, kappa)}"
    )

# The cubic field Q(2^(1/3)): nine components through degree three.
cubic = MinimalPolynomial.parse("-2,0,0")
system = expand_trace_phase(cubic, 3)
show(system, "Q(2^(1/3)) (P = x^3 - 2, k = 3)")

print("\nevaluating the cubic system at n = (1, 1, 1):")
print(" ", evaluate_phase(system, (1, 1, 1)))

print("\nhomogeneity: P(t n) = t^j P(n) componentwise")
n = (2, -1, 3)
doubled = evaluate_phase(system, tuple(2 * x for x in n))
base = evaluate_phase(system, n)
for comp, b, d in zip(system.components, base, doubled):
    assert d == 2**comp.degree * b
print("  checked at n =", n)
