"""
A degeneration through the ideal h1
===================================

Deform mu9_6 along a derivation D of h1 = <X1, X3, ..., X9> and check that an
explicit family g_t conjugates mu + mu_D onto mu + t mu_D.
"""

from filiform.catalog import derive_constants, load_catalog
from filiform.degen import assemble_g_h1, deformation_spec, degeneration_residual, h1_case, structural_violations
from filiform.deform import build_mu_t, jacobi_by_degree, verify_solvable_not_nilpotent

cat = load_catalog()
mu = derive_constants(cat.row("mu9_6"))
case = h1_case(cat, "6.6a", "mu9_6")
spec = deformation_spec(mu, case)

# mu_D is a cocycle and a bracket, so mu_t is a Lie algebra for every t
print({d: len(r) for d, r in jacobi_by_degree(build_mu_t(spec)).items()})
print("mu_1 solvable, not nilpotent:", verify_solvable_not_nilpotent(spec, {}, 1))

# t is tied to p0 by the case's substitution law; the identity is checked in p0
g = assemble_g_h1(case)
print("g(8,2) =", g.entry(8, 2))
print("residual:", degeneration_residual(mu, spec, g, case.t_expr))

# the outside element is -X2 here; with +X2 one coefficient survives
case.outside_coeff = 1
res = degeneration_residual(mu, deformation_spec(mu, case), g, case.t_expr)
for key, v in res:
    print("with +X2:", key, v)
print("structural zeros still hold:", structural_violations(res) == [])
