"""Tour of the built-in surface catalog.

Walks every catalog entry, prints its dimensions and topology, and spot
checks the generalized curvature K_M at one interior point. For the two
round spheres the pointwise value has a closed form (1 and 1/2), for the
flat tori it vanishes, and for odd-dimensional entries it is zero by the
parity of the normal-sphere average.
"""

import numpy as np

import curvlab as cl

print("catalog entries")
print(f"{'name':<20} {'m':>2} {'k':>2} {'n':>2} {'chi':>4} {'reach':>7}")
for entry in cl.catalog_entries():
    chi = "?" if entry["chi"] is None else entry["chi"]
    reach = cl.catalog_get(entry["name"]).reach
    print(
        f"{entry['name']:<20} {entry['m']:>2} {entry['k']:>2} {entry['n']:>2} "
        f"{chi:>4} {reach:>7.3g}"
    )

# -- pointwise curvature at an interior point -------------------------------

print()
print("K_M at one interior point per surface")
rng = np.random.default_rng(0)
for name in cl.catalog_names():
    imm = cl.catalog_get(name)
    u = cl.sample_domain(imm, 1, rng)[0]
    fd = cl.frame_data_at(imm, u)
    k = cl.generalized_curvature_moments(fd)
    print(f"{name:<20} K_M = {k:+.6f}")

# -- areas agree with the closed forms --------------------------------------

print()
area = cl.integrate_scalar(
    cl.catalog_get("sphere2_r3"),
    lambda U: np.ones(len(U)),
    cl.default_grid(cl.catalog_get("sphere2_r3")),
)
print(f"area of sphere2_r3     = {area:.10f}  (4 pi = {4 * np.pi:.10f})")

imm = cl.catalog_get("clifford_torus_r4")
area = cl.integrate_scalar(imm, lambda U: np.ones(len(U)), cl.default_grid(imm))
print(f"area of clifford torus = {area:.10f}  (2 pi^2 = {2 * np.pi**2:.10f})")

# -- parametrized entries ---------------------------------------------------

# the torus of revolution accepts inline parameters in the catalog name
imm = cl.catalog_get("torus_rev_r3(R=2,r=0.5)")
area = cl.integrate_scalar(imm, lambda U: np.ones(len(U)), cl.default_grid(imm))
print(f"area of torus R=2 r=.5 = {area:.10f}  (4 pi^2 = {4 * np.pi**2:.10f})")
