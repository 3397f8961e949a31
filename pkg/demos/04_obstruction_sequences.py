"""Obstruction sequences: the exact residuals that block integrability.

Three candidate functions are continued degree by degree; whenever a degree
cannot be fully absorbed, the leftover is a rational (or parameter
polynomial) multiple of a power of z.  Those coefficients are the sequence
entries: entry k multiplies z^k and lives at quasi-homogeneous degree 2k.
"""

import hopfzero as hz
from hopfzero import Method

FAMILY = """\
params a001 b200 c030
dx = -2*y + a001*z
dy = 2*x + b200*x^2
dz = x^2 + y^2 + c030*y^3
"""

field, _ = hz.normalize_principal_part(hz.parse_system(FAMILY).to_field())

# symbolic run: the first nonzero entry of the h^2-multiplier sequence
seq = hz.jacobi_obstructions(field, 7, Method.JACOBI_H2)
for k in sorted(seq.entries):
    print(f"entry z^{k} (degree {2 * k}): {seq.entries[k]}")

# the defining identity is checked exactly: grad(W).F - W div(F) equals the
# recorded residual series through the truncation degree
defect = hz.recombination_defect(field, seq)
print("defining identity exact:", defect.is_zero())

# on an integrable stratum every entry of every sequence vanishes
integrable = field.substitute_params({"a001": 0, "b200": 3, "c030": -2})
for method in Method:
    s = hz.obstruction_sequence(integrable, 8, method)
    print(f"a001 = 0 stratum, {method.value}: all entries zero = {s.all_zero()}")

# continuing past a vanishing first obstruction: the next few entries
# collapse into the ideal generated by its quadratic factor
deep = hz.jacobi_obstructions(field, 11, Method.JACOBI_H2)
constraint = hz.parse_polynomial("18*a001^2 - 18*a001*b200 + 5*b200^2",
                                 field.params)
for k in (8, 9, 10, 11):
    reduced = hz.ppoly_reduce(deep.entries[k], constraint, "a001")
    print(f"entry z^{k} reduced modulo the first obstruction: "
          f"{'0' if reduced.is_zero() else f'nonzero ({len(reduced.terms)} terms)'}")
