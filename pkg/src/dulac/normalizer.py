"""Degree-by-degree normalization of a field with diagonal linear part.

Given f = Ax + F with A diagonal and F of degree >= 2, each homogeneous
degree k splits into the kernel and range of the homological operator
ad A (which acts diagonally on monomial-vector elements with eigenvalue
<m, L> - lambda_j).  The kernel part stays; the range part is removed by
the substitution x = y + h_k(y) whose generator divides each removable
coefficient by its eigenvalue.  Generators carry no kernel component,
the usual distinguished choice, which pins the outcome uniquely.

The returned transformation Psi maps original to normalized coordinates,
f_hat = push_forward(Psi, f) through the truncation order, with the
individual steps composed outermost-last (the highest-degree step is the
outermost function).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import (
    CommutationError,
    DimensionMismatchError,
    NonDiagonalLinearPartError,
    TruncationOrderError,
)
from .maps import NearIdentityMap, pull_back, push_forward
from .poly import PolyVectorField, lie_bracket, linear_field
from .resonance import kernel_dimension_at_degree

NORMALIZATION_STYLES = ("distinguished",)


@dataclass(frozen=True)
class DegreeRecord:
    """What happened while processing one homogeneous degree."""

    degree: int
    kernel_dim: int       # dimension of Ker(ad A) on this degree's monomials
    removed_dim: int      # number of monomial-vector terms removed from f


@dataclass(frozen=True)
class NormalFormResult:
    normal_form: PolyVectorField
    transformation: NearIdentityMap
    per_degree: Tuple[DegreeRecord, ...]


def normalize(f: PolyVectorField, order: int,
              style: str = "distinguished") -> NormalFormResult:
    """Normalize f = Ax + F through the given order.

    Requires an attached spectrum (diagonal linear part) and order >= 2;
    the field must be known at least to that order.
    """
    if style not in NORMALIZATION_STYLES:
        raise ValueError(f"unknown normalization style {style!r}")
    if f.spectrum is None:
        raise NonDiagonalLinearPartError(
            "normalize needs a field with an attached spectrum")
    if order < 2:
        raise TruncationOrderError("normalization order must be at least 2")
    if f.order < order:
        raise TruncationOrderError(
            f"field is only known to order {f.order}, requested {order}")
    spectrum = f.spectrum
    dim = f.dim
    cur = f.truncated(order) if f.order > order else f
    cur = cur.without_spectrum()
    phi_total = NearIdentityMap.identity(dim, order)
    records: List[DegreeRecord] = []
    for degree in range(2, order + 1):
        part = cur.degree_part(degree)
        h_terms = []
        for comp, exps, coeff in part.terms():
            gap = spectrum.gap(exps, comp)
            if gap:
                h_terms.append((comp, exps, coeff / gap))
        records.append(DegreeRecord(
            degree, kernel_dimension_at_degree(spectrum, degree), len(h_terms)))
        if h_terms:
            h = PolyVectorField.from_terms(dim, order, h_terms)
            step = NearIdentityMap.from_generator(h)
            cur = pull_back(step, cur)
            phi_total = phi_total.compose(step)
    transformation = phi_total.invert_to_order()
    normal_form = cur.with_spectrum(spectrum)
    return NormalFormResult(normal_form, transformation, tuple(records))


def check_commute(f: PolyVectorField, g: PolyVectorField,
                  order: Optional[int] = None) -> Tuple[bool, Optional[int], PolyVectorField]:
    """Bracket residual of two fields through the given order.

    Returns (commutes, first offending degree or None, residual).
    """
    residual = lie_bracket(f, g)
    if order is not None:
        if order > residual.order:
            raise TruncationOrderError(
                f"commutation check to order {order} needs fields known "
                f"beyond order {residual.order}")
        residual = residual.truncated(order)
    if residual.is_zero():
        return True, None, residual
    first = min(sum(exps) for _, exps, _ in residual.terms())
    return False, first, residual


@dataclass(frozen=True)
class SymmetryNormalization:
    """Outcome of normalizing a symmetry and dragging the field along."""

    symmetry_result: NormalFormResult
    transformed_field: PolyVectorField
    residual: PolyVectorField


def normalize_with_symmetry(f: PolyVectorField, g: PolyVectorField,
                            order: int) -> SymmetryNormalization:
    """Normalize the commuting field g, transform f by the same change.

    Preconditions: [f, g] = 0 through the requested order and g has a
    diagonal linear part with stored spectrum B.  The returned residual
    is [Bx, f_transformed], which vanishes through the order because the
    transported f commutes with the normalized g's linear part grading.
    """
    if f.dim != g.dim:
        raise DimensionMismatchError("field and symmetry dimensions differ")
    ok, first, _ = check_commute(f, g, order)
    if not ok:
        raise CommutationError(
            f"fields do not commute; first nonzero bracket degree is {first}",
            first_degree=first)
    result = normalize(g, order)
    transformed = push_forward(result.transformation, f)
    b_linear = linear_field(result.normal_form.spectrum, transformed.order)
    residual = lie_bracket(b_linear, transformed)
    return SymmetryNormalization(result, transformed, residual)
