"""Orbital normal form of a three-parameter family, degree by degree.

The field is simplified by near-identity coordinate changes plus a
time-reparametrization; what survives at each even field degree 2k is
a_k (z^k x, z^k y, 0) + b_k (0, 0, z^(k+1)).  The computation keeps the
generators it used, so the transformation can be replayed and checked.
"""

import hopfzero as hz

TEXT = """\
params a001 b200 c030
dx = -2*y + a001*z
dy = 2*x + b200*x^2
dz = x^2 + y^2 + c030*y^3
"""

source = hz.parse_system(TEXT)
field, scalings = hz.normalize_principal_part(source.to_field())
print("input normalized with scalings", scalings.as_dict())

nf = hz.orbital_normal_form(field, 3)
for k in sorted(nf.a_coeffs):
    print(f"a_{k} = {nf.a_coeffs[k]}")
    print(f"b_{k} = {nf.b_coeffs[k]}")

# replay the recorded generator steps on the original field: the result is
# exactly the stored transformed field, whose slices are purely resonant
current = field.truncate(2 * nf.max_index)
for step in nf.generators:
    if step.generator.is_zero() and step.reparam.is_zero():
        continue
    current = hz.apply_generator_step(current, step, 2 * nf.max_index)
print("replayed transformation matches:", current == nf.field)
print("resonant reconstruction matches:",
      current == hz.normal_form_field(nf).truncate(2 * nf.max_index))

# first-resonance data drives the later classification
res = hz.first_resonance(nf)
print(f"l0 = {res.l0}, m0 = {res.m0}, n0 = {res.n0 or f'>={res.max_index + 1}'}")

# the associated planar system (u = z, v = squared radius)
bound = field.substitute_params({"a001": 1, "b200": 0, "c030": 0})
planar = hz.planar_reduction(hz.orbital_normal_form(bound, 3))
print("planar reduction at a001=1:", planar)

# the coprime resonance test behind the h^2-multiplier dispatch
pair = hz.coprime_resonance(
    hz.rat("-1/4"), hz.rat("1/4"), 1)
print("coprime pair for the leading coefficients:", pair)
