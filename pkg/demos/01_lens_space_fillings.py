"""Fillings from vanishing cycles on a planar page.

Run: python demos/01_lens_space_fillings.py
"""
# %% The boundary multitwist on a pair of pants fills L(3,1)
from planarcheck import (
    Factorization,
    boundary_multitwist,
    enumerate_sphere_classes,
    homology_report,
    intersection_form,
    no_minus_one_class,
    positive_genus_witness,
)

f = boundary_multitwist(3)
print("cycles:", [c.winding for c in f.cycles])
lat = intersection_form(f)
print("H2 basis:", lat.basis, "gram:", lat.gram_matrix(), "c1:", list(lat.c1))

# %% One sphere class: the outer curve minus the two inner ones
for s in enumerate_sphere_classes(f):
    print(f"sphere: +alpha_{s.plus} - sum alpha_j for j in {list(s.minus)}, square {s.square}")
print("adjunction on (1,-1,-1):", positive_genus_witness(f, [1, -1, -1]))

# %% Multitwists with more boundary components give Gram [-b]
for b in range(2, 8):
    print(b, intersection_form(boundary_multitwist(b)).gram_matrix())

# %% Six twists about the core of an annulus: a chain of five (-2)-spheres
tau6 = Factorization.from_windings(1, [[1]] * 6)
rep = homology_report(tau6, verify=True)
print("tau^6 gram:")
for row in rep.lattice.gram_matrix():
    print("  ", row)
print("H1:", list(rep.h1), "chi:", rep.euler, "sigma:", rep.signature, "chi+sigma:", rep.chi_plus_sigma)
print("sphere classes:", len(enumerate_sphere_classes(tau6)))

# %% No class of square -1 ever appears
cert = no_minus_one_class(tau6)
print(cert.holds, "-", cert.argument, "- min square", cert.min_square)
