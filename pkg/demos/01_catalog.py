"""
The catalog: structure constants, Jacobi, derivations
=====================================================

"""

from filiform.catalog import derive_constants, eq5_residual, load_catalog, named_constants
from filiform.deriv import derivation_space, is_char_nilpotent, verify_diag_derivation
from filiform.lie import jacobi_residuals, series

cat = load_catalog()
print(len(cat.rows), "parametric rows,", len(cat.diag), "algebras with a semisimple derivation")

# every bracket is fixed by nine constants C^9_{ij}; the rest follow linearly
row = cat.row("mu9_1")
C = named_constants(row)
print("C9_45 =", C["C9_45"], "  C5_23 =", C["C5_23"])

# Jacobi and the quadratic constraint hold identically in the parameters
mu = derive_constants(row)
print("Jacobi residuals:", jacobi_residuals(mu), "  quadratic constraint:", eq5_residual(row))

# specialise to get numbers: filiform means the lower central series drops by one each step after the first
mu6 = derive_constants(cat.row("mu9_6"))
print("lower central series of mu9_6:", series(mu6))

# mu9_9 has diag(1..9) as a derivation, mu9_6 has only nilpotent ones
print("diag(1..9) derives mu9_9:", verify_diag_derivation("mu9_9", cat))
print("dim Der(mu9_6) =", len(derivation_space(mu6)), " characteristically nilpotent:", is_char_nilpotent(mu6))
