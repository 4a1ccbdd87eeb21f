"""
The h2 families: recurrence against closed form
===============================================

For a lower-triangular derivation D of h2 with distinct diagonal, the
entries p_{r,s} of g_t can be computed step by step or summed over
decreasing sequences.  Both must agree.
"""

from filiform.catalog import derive_constants, load_catalog
from filiform.degen import (assemble_g_h2, closed_form_table, deformation_spec, degeneration_residual,
                            enumerate_I, h2_case, recurrence_table)
from filiform.deriv import IDEAL_H2, derivation_residual

cat = load_catalog()
print("I_3(5,2) =", enumerate_I(5, 2, 3))

case = h2_case(cat, "7.3", "mu9_8")
rec, closed = recurrence_table(case.D), closed_form_table(case.D)
print("recurrence == closed form:", rec == closed)
for (r, s), v in sorted(rec.items()):
    if v:
        print(f"  p_{r}{s} =", v)

mu = derive_constants(cat.row("mu9_8"))
print("degeneration residual:", degeneration_residual(mu, deformation_spec(mu, case), assemble_g_h2(case, table=rec)))

# the printed D for mu9_1 is not a derivation; one entry is off
case71 = h2_case(cat, "7.1", "mu9_1")
mu1 = derive_constants(cat.row("mu9_1"))
res = derivation_residual(mu1.restrict(IDEAL_H2.basis_indices), case71.D)
print(len(res), "derivation residuals for the printed matrix, e.g.", res[0][0], res[0][1])
