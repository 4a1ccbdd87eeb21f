"""
Excluded parameter values
=========================

At a = -1 the family mu9_1 is set aside on the grounds that neither ideal
carries a non-nilpotent derivation.  Check both ideals directly.
"""

from fractions import Fraction

from filiform.catalog import derive_constants, load_catalog
from filiform.deriv import IDEAL_H1, IDEAL_H2, derivation_space, derivations_all_nilpotent

cat = load_catalog()
row = cat.row("mu9_1")

for a in (Fraction(-1), Fraction(0), Fraction(1), Fraction(1, 2), Fraction(3)):
    if a in (0, 1, Fraction(1, 2)):
        # these values are poles of some structure constants; use the bound row instead
        ex = next(e for e in cat.exclusions if e.algebra == "mu9_1" and e.condition == f"a = {a}")
        mu = derive_constants(row).substitute(ex.bindings).specialize({"b": Fraction(3)})
    else:
        mu = derive_constants(row).specialize({"a": a, "b": Fraction(3)})
    for h in (IDEAL_H1, IDEAL_H2):
        sub = mu.restrict(h.basis_indices)
        print(f"a = {a}, {h.name}: dim Der = {len(derivation_space(sub))}, all nilpotent: {derivations_all_nilpotent(sub)}")

# Der(h2) is not nilpotent at a = -1, and the h2 construction goes through there
# once the d_87 entry is replaced by the value that makes D a derivation.
from filiform.degen import assemble_g_h2, deformation_spec, degeneration_residual, h2_case, recurrence_table
from filiform.deriv import derivation_residual

case = h2_case(cat, "7.1", "mu9_1", overrides={(8, 7): "(6*a^2-5*a+2)/(3*a^2*(1-2*a))"})
case.D = case.D.substitute({"a": -1})
mu = derive_constants(row).substitute({"a": -1})
print("D at a = -1: diagonal", [str(x) for x in case.D.diagonal()], " d_87 =", case.D.entry(8, 7))
print("derivation residual:", derivation_residual(mu.restrict(IDEAL_H2.basis_indices), case.D))
g = assemble_g_h2(case, table=recurrence_table(case.D))
print("degeneration residual:", degeneration_residual(mu, deformation_spec(mu, case), g))
