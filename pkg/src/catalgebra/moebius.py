"""Zeta and Moebius elements, two-sided inverses and Moebius inversion."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraElement, convolve, left_mult_matrix, sub, unit
from .errors import InversionFailure, NotInvertible, SingularMatrix, UnsupportedRig
from .fincat import FinCategory
from .matrixkit import solve
from .rigs import RigDescriptor


@dataclass(frozen=True)
class InverseCertificate:
    element: AlgebraElement
    inverse: AlgebraElement
    residual_left: AlgebraElement   # inverse * element - unit
    residual_right: AlgebraElement  # element * inverse - unit

    @property
    def valid(self) -> bool:
        rig = self.element.rig
        return all(rig.is_zero(v) for v in self.residual_left.coeffs + self.residual_right.coeffs)

    @property
    def max_residual(self) -> float:
        rig = self.element.rig
        vals = self.residual_left.coeffs + self.residual_right.coeffs
        return max((rig.distance(v, rig.zero) for v in vals), default=0.0)


def zeta(cat: FinCategory, rig: RigDescriptor) -> AlgebraElement:
    return AlgebraElement(cat, rig, (rig.one,) * cat.arrow_count)


def invert(a: AlgebraElement) -> InverseCertificate:
    """Two-sided convolution inverse of ``a``.

    Solves ``L_a x = unit`` with ``L_a`` the left-multiplication matrix, then
    checks both ``x a`` and ``a x`` against the unit.
    """
    rig = a.rig
    if not (rig.is_field and rig.has_subtraction):
        raise UnsupportedRig(f"inversion needs a field, not {rig.name}")
    eps = unit(a.category, rig)
    try:
        x = solve(left_mult_matrix(a), list(eps.coeffs))
    except SingularMatrix as exc:
        raise NotInvertible(str(exc)) from None
    inv = AlgebraElement(a.category, rig, x)
    cert = InverseCertificate(a, inv, sub(convolve(inv, a), eps), sub(convolve(a, inv), eps))
    if not cert.valid:
        raise NotInvertible(f"one-sided inverse only (max residual {cert.max_residual:.3e})")
    return cert


def mobius(cat: FinCategory, rig: RigDescriptor) -> AlgebraElement:
    return invert(zeta(cat, rig)).inverse


def mobius_inversion(f: AlgebraElement, direction: str = "zeta_then_mu",
                     mu: AlgebraElement = None) -> AlgebraElement:
    """Transform ``f`` by left convolution with zeta (or mu) and check the round trip.

    Returns the transformed element; raises :class:`InversionFailure` if
    applying the other factor does not give ``f`` back.
    """
    z = zeta(f.category, f.rig)
    if mu is None:
        mu = invert(z).inverse
    if direction == "zeta_then_mu":
        first, second = z, mu
    elif direction == "mu_then_zeta":
        first, second = mu, z
    else:
        raise ValueError(f"unknown direction {direction!r}")
    g = convolve(first, f)
    if convolve(second, g) != f:
        raise InversionFailure("Moebius round trip did not reproduce the input")
    return g
