"""Polynomial coordinate changes with invertible linear part.

A near-identity map is y = Psi(x) = Lx + h(x) with L invertible and h a
truncated field of degree >= 2 terms.  Maps compose, invert to the
truncation order, and transport vector fields:

    push_forward(Psi, f) is the field g with ydot = g(y) when xdot = f(x),

computed exactly through the truncation order.  Composition convention is
outermost-last: compose(outer, inner) applies inner first, so the map for
"step 2 then step 3" is compose(step3, step2).
"""

from __future__ import annotations

from typing import List, Optional, Sequence

from .errors import DimensionMismatchError
from .linalg import identity_matrix, mat_inverse, mat_mul
from .poly import PolyScalar, PolyVectorField, jacobian
from .scalars import ONE, ZERO, GaussianRational, as_scalar


class NearIdentityMap:
    """y = Lx + h(x), L invertible, h of degree >= 2."""

    __slots__ = ("dim", "order", "linear", "h")

    def __init__(self, linear: Sequence[Sequence], h: Optional[PolyVectorField] = None,
                 order: Optional[int] = None):
        rows = tuple(tuple(as_scalar(v) for v in row) for row in linear)
        dim = len(rows)
        if any(len(row) != dim for row in rows):
            raise DimensionMismatchError("linear part must be square")
        if h is None:
            if order is None:
                raise DimensionMismatchError(
                    "need a truncation order when no higher-order part is given")
            h = PolyVectorField.zero(dim, order)
        if h.dim != dim:
            raise DimensionMismatchError("linear part and h dimensions differ")
        if not h.is_zero() and h.min_degree() < 2:
            raise DimensionMismatchError(
                "higher-order part of a near-identity map must start at degree 2")
        mat_inverse(rows)  # raises SingularLinearPartError if not invertible
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "order", h.order)
        object.__setattr__(self, "linear", rows)
        object.__setattr__(self, "h", h)

    def __setattr__(self, name, value):
        raise AttributeError("NearIdentityMap is immutable")

    @classmethod
    def identity(cls, dim: int, order: int) -> "NearIdentityMap":
        return cls(identity_matrix(dim), order=order)

    @classmethod
    def from_linear(cls, matrix: Sequence[Sequence], order: int) -> "NearIdentityMap":
        return cls(matrix, order=order)

    @classmethod
    def from_generator(cls, h: PolyVectorField) -> "NearIdentityMap":
        """The map x + h(x) for a generator h of degree >= 2."""
        return cls(identity_matrix(h.dim), h)

    @classmethod
    def from_components(cls, components: Sequence[PolyScalar]) -> "NearIdentityMap":
        """Split explicit component polynomials into linear part and rest."""
        dim = len(components)
        order = components[0].order
        zero_exps = (0,) * dim
        linear = []
        rest = []
        for comp in components:
            if comp.coefficient(zero_exps):
                raise DimensionMismatchError(
                    "coordinate changes must fix the origin")
            row = []
            for j in range(dim):
                exps = tuple(1 if k == j else 0 for k in range(dim))
                row.append(comp.coefficient(exps))
            linear.append(row)
            rest.append(comp.degree_range(2))
        return cls(linear, PolyVectorField(rest))

    def is_identity(self) -> bool:
        return (self.h.is_zero()
                and all(self.linear[i][j] == (1 if i == j else 0)
                        for i in range(self.dim) for j in range(self.dim)))

    def component_polys(self) -> List[PolyScalar]:
        """The map's components Lx + h(x) as scalar polynomials."""
        out = []
        for i in range(self.dim):
            terms = {}
            for j in range(self.dim):
                if self.linear[i][j]:
                    exps = tuple(1 if k == j else 0 for k in range(self.dim))
                    terms[exps] = self.linear[i][j]
            comp = PolyScalar(self.dim, self.order, terms) + self.h.components[i]
            out.append(comp)
        return out

    def compose(self, inner: "NearIdentityMap") -> "NearIdentityMap":
        """self after inner: (self . inner)(x) = self(inner(x))."""
        if self.dim != inner.dim:
            raise DimensionMismatchError("composed maps must share a dimension")
        inner_comps = inner.component_polys()
        comps = [poly.substitute(inner_comps) for poly in self.component_polys()]
        return NearIdentityMap.from_components(comps)

    def invert_to_order(self) -> "NearIdentityMap":
        """The map Phi with Psi(Phi(y)) = y through the truncation order."""
        linv = mat_inverse(self.linear)
        if self.h.is_zero():
            return NearIdentityMap(linv, order=self.order)
        dim, order = self.dim, self.order
        ys = [PolyScalar.variable(dim, order, i) for i in range(dim)]
        # Fixed point of Phi = Linv (y - h(Phi)); each pass is correct to
        # one degree higher, starting exact at degree 1.
        phi = [_linear_combo(linv[i], ys) for i in range(dim)]
        for _ in range(order - 1):
            h_of_phi = [c.substitute(phi) for c in self.h.components]
            new_phi = []
            for i in range(dim):
                acc = PolyScalar.zero(dim, order)
                for j in range(dim):
                    if linv[i][j]:
                        acc = acc + (ys[j] - h_of_phi[j]) * linv[i][j]
                new_phi.append(acc)
            if new_phi == phi:
                break
            phi = new_phi
        return NearIdentityMap.from_components(phi)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NearIdentityMap):
            return NotImplemented
        return (self.linear == other.linear and self.h == other.h
                and self.order == other.order)

    def __repr__(self) -> str:
        return (f"NearIdentityMap(dim={self.dim}, order={self.order}, "
                f"components={[str(c) for c in self.component_polys()]})")


def _linear_combo(coeffs: Sequence[GaussianRational],
                  polys: Sequence[PolyScalar]) -> PolyScalar:
    acc = PolyScalar.zero(polys[0].dim, polys[0].order)
    for c, p in zip(coeffs, polys):
        if c:
            acc = acc + p * c
    return acc


def compose_scalar(phi: PolyScalar, nmap: NearIdentityMap) -> PolyScalar:
    """phi(Psi(x)): substitute the map components into the scalar."""
    if phi.dim != nmap.dim:
        raise DimensionMismatchError("scalar and map dimensions differ")
    return phi.substitute(nmap.component_polys())


def pull_back(phi_map: NearIdentityMap, f: PolyVectorField) -> PolyVectorField:
    """Field in y-coordinates when x = Phi(y) and xdot = f(x).

    Solves DPhi(y) g(y) = f(Phi(y)) for g by the exact Neumann series
    g = sum_j (-Linv Dh)^j Linv f(Phi); entries of Dh have degree >= 1,
    so the series terminates within the truncation order.
    """
    if phi_map.dim != f.dim:
        raise DimensionMismatchError("map and field dimensions differ")
    order = min(phi_map.order, f.order)
    comps = [c.truncated(order) if c.order > order else c
             for c in phi_map.component_polys()]
    rhs = [c.substitute(comps) for c in f.components]
    linv = mat_inverse(phi_map.linear)
    acc = [_linear_combo(linv[i], rhs) for i in range(f.dim)]
    total = list(acc)
    if not phi_map.h.is_zero():
        # Map components are exact polynomials, so differentiating them
        # loses nothing; re-tag the Jacobian entries at the working order.
        dh = [[PolyScalar(f.dim, order, entry.terms) for entry in row]
              for row in jacobian(phi_map.h)]
        # M = -Linv Dh, entries of degree >= 1
        m_rows = []
        for i in range(f.dim):
            row = []
            for j in range(f.dim):
                entry = PolyScalar.zero(f.dim, order)
                for k in range(f.dim):
                    if linv[i][k] and not dh[k][j].is_zero():
                        entry = entry - dh[k][j] * linv[i][k]
                row.append(entry)
            m_rows.append(row)
        for _ in range(order):
            nxt = []
            for i in range(f.dim):
                entry = PolyScalar.zero(f.dim, order)
                for j in range(f.dim):
                    if not m_rows[i][j].is_zero() and not acc[j].is_zero():
                        entry = entry + m_rows[i][j] * acc[j]
                nxt.append(entry)
            acc = nxt
            if all(a.is_zero() for a in acc):
                break
            total = [t + a for t, a in zip(total, acc)]
    return PolyVectorField([t.truncated(order) if t.order > order else t
                            for t in total])


def push_forward(psi_map: NearIdentityMap, f: PolyVectorField) -> PolyVectorField:
    """Field in y-coordinates when y = Psi(x) and xdot = f(x)."""
    return pull_back(psi_map.invert_to_order(), f)


def transform_by_generator(f: PolyVectorField, h: PolyVectorField) -> PolyVectorField:
    """Transport f through the substitution x = y + h(y)."""
    return pull_back(NearIdentityMap.from_generator(h), f)


def linear_conjugate(matrix: Sequence[Sequence], f: PolyVectorField) -> PolyVectorField:
    """Transport f through the linear change y = Tx."""
    return push_forward(NearIdentityMap.from_linear(matrix, f.order), f)
