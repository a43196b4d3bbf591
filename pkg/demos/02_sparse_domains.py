"""Sparse product-cell subdomains of the torus.

At scale N = p^K with localization sigma, axis j carries N^(deg_j - sigma_j)
cells of width N^(-deg_j), equally spaced; the union has measure
N^(-sum sigma_j) exactly.  sigma = 0 tiles the whole torus; raising sigma_j
thins axis j while keeping the cell width, which is the p-adically shaped
geometry the mean values integrate over.
"""

from fractions import Fraction

from sparsemv import LocalizationVector, ScaleSpec, build_domain, enumerate_cells

scale = ScaleSpec(p=3, K=1)

print("parabola degrees (1, 2) at N = 3:")
for sigma in ((0, 0), (0, 1), (0, 2), (1, 2)):
    dom = build_domain(scale, LocalizationVector(tuple(map(Fraction, sigma))), (1, 2))
    print(
        f"  sigma={sigma}: {dom.cell_counts[0]} x {dom.cell_counts[1]} cells, "
        f"spacing {dom.spacings}, measure {dom.measure}"
    )

print("\ncells of the sigma=(0,1) strip family (centers exact):")
dom = build_domain(scale, LocalizationVector((Fraction(0), Fraction(1))), (1, 2))
for iota, center, halfwidth in enumerate_cells(dom):
    print(f"  iota={iota} center=({center[0]}, {center[1]}) halfwidth={halfwidth}")

print("\nmoment-curve plates (degrees (1,2,3), sigma=(0,0,1)):")
dom = build_domain(scale, LocalizationVector((Fraction(0),) * 2 + (Fraction(1),)),
                   (1, 2, 3))
print(f"  {dom.total_cells} plates of half-widths {dom.cell_halfwidths}, "
      f"measure {dom.measure}")

total = Fraction(0)
for _, _, hw in enumerate_cells(dom):
    vol = Fraction(1)
    for h in hw:
        vol *= 2 * h
    total += vol
print(f"  exact measure identity: sum of cell volumes = {total} = {dom.measure}")
