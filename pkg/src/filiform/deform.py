"""Linear deformations ``mu_t = mu + t mu_D`` built from a codimension-one ideal."""

from __future__ import annotations

from dataclasses import dataclass

from .deriv import DerivationSpec, IdealSpec, derivation_residual
from .exact import RationalFunction, as_rf
from .lie import LieBracket, LinearMap, is_nilpotent, is_solvable, jacobi_residuals


class NotCodimensionOne(ValueError):
    pass


class NotADerivation(ValueError):
    def __init__(self, residuals):
        (i, j, l), v = residuals[0]
        super().__init__(f"{len(residuals)} nonzero derivation residuals, first at ({i},{j},{l}): {v}")
        self.residuals = residuals


@dataclass
class DeformationSpec:
    """``mu_D(X, z) = D z`` with ``X = outside_coeff * X_{outside_index}``.

    The sign is case data: a conjugating family that closes up for
    ``X = X_2`` generally fails for ``X = -X_2`` and vice versa.
    """

    base: LieBracket
    ideal: IdealSpec
    outside_index: int
    D: DerivationSpec
    outside_coeff: int = 1

    def __post_init__(self):
        if isinstance(self.D, LinearMap):
            self.D = DerivationSpec(self.ideal, self.D)
        if self.outside_index in self.ideal.basis_indices:
            raise NotCodimensionOne(f"X_{self.outside_index} lies in the ideal")
        if len(self.ideal) != self.base.dim - 1:
            raise NotCodimensionOne(f"ideal of dimension {len(self.ideal)} in dimension {self.base.dim}")


def build_mu_D(spec: DeformationSpec, check: bool = True) -> LieBracket:
    if check:
        res = derivation_residual(spec.base.restrict(spec.ideal.basis_indices), spec.D)
        if res:
            raise NotADerivation(res)
    idx = spec.ideal.basis_indices
    scale = RationalFunction.const(1) / spec.outside_coeff
    out = LieBracket(spec.base.dim, name=f"mu_D({spec.base.name})")
    for (r, c), x in spec.D.matrix.nonzero_entries():
        out.add(spec.outside_index, idx[c - 1], idx[r - 1], x * scale)
    return out


def build_mu_t(spec: DeformationSpec, t=None, check: bool = True) -> LieBracket:
    t = RationalFunction.var("t") if t is None else as_rf(t)
    return spec.base + build_mu_D(spec, check).scale(t)


def jacobi_by_degree(mu_t: LieBracket, var: str = "t") -> dict:
    """Jacobi residuals of ``mu_t`` split by degree in ``var``.

    Degree 0 is the Jacobi identity of the base, degree 1 the cocycle
    condition and degree 2 the Jacobi identity of ``mu_D``.
    """
    out: dict = {0: [], 1: [], 2: []}
    for key, v in jacobi_residuals(mu_t):
        for d, c in v.coefficients_in(var).items():
            if c:
                out.setdefault(d, []).append((key, c))
    return out


def verify_solvable_not_nilpotent(spec: DeformationSpec, point: dict, t=1) -> bool:
    """``mu_t`` at a rational point and rational ``t``: solvable and not nilpotent."""
    mu = build_mu_t(spec, t, check=False)
    mu = mu.specialize(point) if point else mu
    return is_solvable(mu) and not is_nilpotent(mu)
