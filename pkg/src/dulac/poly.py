"""Sparse truncated polynomial algebra over the Gaussian rationals.

A scalar polynomial is a dict mapping exponent tuples to nonzero
coefficients; the zero polynomial is the empty dict.  Every value carries
a truncation order N: terms of degree > N are unknown and silently
dropped by all operations (never extrapolated).  Products and sums of
values with different orders are correct to the smaller order, and that
is the order they carry.

A polynomial vector field couples n scalar components over n variables.
It optionally stores a spectrum: the eigenvalue tuple of a diagonal
linear part, validated against the degree-1 terms on attachment.  The
fundamental operation is the Lie bracket

    [f, g](x) = Dg(x) f(x) - Df(x) g(x)

under which the homogeneous advection fields by a diagonal linear field
Ax act diagonally on monomial-vector basis elements:
[Ax, x^m e_j] = (<m, L> - lambda_j) x^m e_j for spectrum L.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import (
    DimensionMismatchError,
    NonDiagonalLinearPartError,
    TruncationOrderError,
)
from .scalars import ONE, ZERO, GaussianRational, ScalarLike, as_scalar

Exponents = Tuple[int, ...]
TermMap = Dict[Exponents, GaussianRational]

_COEFF_TYPES = (GaussianRational, int, Fraction)


def monomial_degree(exps: Exponents) -> int:
    return sum(exps)


def monomial_mul(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


def grlex_key(exps: Exponents) -> Tuple[int, Exponents]:
    """Sort key for the graded lexicographic term order."""
    return (sum(exps), exps)


def enumerate_monomials(dim: int, degree: int) -> Iterator[Exponents]:
    """All exponent tuples of the given total degree, in lexicographic order."""
    if dim == 1:
        yield (degree,)
        return
    for first in range(degree + 1):
        for rest in enumerate_monomials(dim - 1, degree - first):
            yield (first,) + rest


def enumerate_monomials_upto(dim: int, max_degree: int, min_degree: int = 0) -> Iterator[Exponents]:
    """Exponent tuples with min_degree <= total degree <= max_degree, graded lex."""
    for degree in range(min_degree, max_degree + 1):
        yield from enumerate_monomials(dim, degree)


class PolyScalar:
    """A truncated sparse polynomial in ``dim`` variables."""

    __slots__ = ("dim", "order", "terms")

    def __init__(self, dim: int, order: int, terms: Optional[TermMap] = None):
        if dim < 1:
            raise DimensionMismatchError("need at least one variable")
        if order < 0:
            raise TruncationOrderError("truncation order must be nonnegative")
        clean: TermMap = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != dim or any(e < 0 for e in exps):
                raise DimensionMismatchError(
                    f"exponent tuple {exps} does not fit dimension {dim}")
            value = as_scalar(coeff)
            if value and sum(exps) <= order:
                clean[exps] = value
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PolyScalar is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, dim: int, order: int) -> "PolyScalar":
        return cls(dim, order)

    @classmethod
    def constant(cls, dim: int, order: int, value: ScalarLike) -> "PolyScalar":
        return cls(dim, order, {(0,) * dim: as_scalar(value)})

    @classmethod
    def variable(cls, dim: int, order: int, index: int) -> "PolyScalar":
        exps = tuple(1 if k == index else 0 for k in range(dim))
        return cls(dim, order, {exps: ONE})

    @classmethod
    def monomial(cls, dim: int, order: int, exps: Exponents,
                 coeff: ScalarLike = 1) -> "PolyScalar":
        return cls(dim, order, {tuple(exps): as_scalar(coeff)})

    # -- inspection ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps: Exponents) -> GaussianRational:
        return self.terms.get(tuple(exps), ZERO)

    def max_degree(self) -> int:
        """Highest degree with a nonzero term (0 for the zero polynomial)."""
        return max((sum(e) for e in self.terms), default=0)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=0)

    def degree_part(self, degree: int) -> "PolyScalar":
        picked = {e: c for e, c in self.terms.items() if sum(e) == degree}
        return PolyScalar(self.dim, self.order, picked)

    def degree_range(self, low: int, high: Optional[int] = None) -> "PolyScalar":
        """Terms with low <= degree <= high (high defaults to the order)."""
        top = self.order if high is None else high
        picked = {e: c for e, c in self.terms.items() if low <= sum(e) <= top}
        return PolyScalar(self.dim, self.order, picked)

    def sorted_terms(self) -> List[Tuple[Exponents, GaussianRational]]:
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]))

    def truncated(self, order: int) -> "PolyScalar":
        if order > self.order:
            raise TruncationOrderError(
                f"cannot extend truncation order {self.order} to {order}")
        if order == self.order:
            return self
        return PolyScalar(self.dim, order, self.terms)

    # -- arithmetic ----------------------------------------------------

    def _check_dim(self, other: "PolyScalar") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"mixed dimensions {self.dim} and {other.dim}")

    def __add__(self, other: Union["PolyScalar", ScalarLike]) -> "PolyScalar":
        if isinstance(other, _COEFF_TYPES):
            other = PolyScalar.constant(self.dim, self.order, other)
        self._check_dim(other)
        order = min(self.order, other.order)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = out.get(exps)
            total = coeff if acc is None else acc + coeff
            if total:
                out[exps] = total
            elif acc is not None:
                del out[exps]
        return PolyScalar(self.dim, order, out)

    __radd__ = __add__

    def __neg__(self) -> "PolyScalar":
        return PolyScalar(self.dim, self.order,
                          {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Union["PolyScalar", ScalarLike]) -> "PolyScalar":
        if isinstance(other, _COEFF_TYPES):
            other = PolyScalar.constant(self.dim, self.order, other)
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> "PolyScalar":
        return (-self) + other

    def __mul__(self, other: Union["PolyScalar", ScalarLike]) -> "PolyScalar":
        if isinstance(other, _COEFF_TYPES):
            value = as_scalar(other)
            if not value:
                return PolyScalar(self.dim, self.order)
            return PolyScalar(self.dim, self.order,
                              {e: c * value for e, c in self.terms.items()})
        self._check_dim(other)
        order = min(self.order, other.order)
        out: TermMap = {}
        for ea, ca in self.terms.items():
            da = sum(ea)
            if da > order:
                continue
            for eb, cb in other.terms.items():
                if da + sum(eb) > order:
                    continue
                exps = monomial_mul(ea, eb)
                coeff = ca * cb
                acc = out.get(exps)
                total = coeff if acc is None else acc + coeff
                if total:
                    out[exps] = total
                elif acc is not None:
                    del out[exps]
        return PolyScalar(self.dim, order, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "PolyScalar":
        if not isinstance(exponent, int) or exponent < 0:
            raise TypeError("polynomial exponent must be a nonnegative integer")
        result = PolyScalar.constant(self.dim, self.order, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyScalar):
            return NotImplemented
        return (self.dim == other.dim and self.order == other.order
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.dim, self.order, frozenset(self.terms.items())))

    # -- calculus ------------------------------------------------------

    def partial(self, index: int) -> "PolyScalar":
        """Partial derivative with respect to variable ``index``.

        Differentiation of a value known to order N is known to order N - 1.
        """
        out: TermMap = {}
        for exps, coeff in self.terms.items():
            e = exps[index]
            if e == 0:
                continue
            lowered = exps[:index] + (e - 1,) + exps[index + 1:]
            out[lowered] = coeff * e
        return PolyScalar(self.dim, max(self.order - 1, 0), out)

    def substitute(self, values: Sequence["PolyScalar"]) -> "PolyScalar":
        """Substitute ``values[i]`` for variable i, truncating exactly.

        The result is correct to min(self.order, min of value orders) and
        carries that order.  Values must share a common dimension.
        """
        if len(values) != self.dim:
            raise DimensionMismatchError(
                f"need {self.dim} substitution values, got {len(values)}")
        vdim = values[0].dim
        order = self.order
        for v in values:
            if v.dim != vdim:
                raise DimensionMismatchError("substitution values mix dimensions")
            order = min(order, v.order)
        no_constants = all(not v.coefficient((0,) * vdim) for v in values)
        powers: Dict[Tuple[int, int], PolyScalar] = {}

        def power(i: int, p: int) -> PolyScalar:
            key = (i, p)
            got = powers.get(key)
            if got is None:
                if p == 1:
                    got = values[i].truncated(order) if values[i].order > order else values[i]
                else:
                    got = power(i, p - 1) * values[i]
                powers[key] = got
            return got

        acc: TermMap = {}
        for exps, coeff in self.terms.items():
            if no_constants and sum(exps) > order:
                continue
            piece: Optional[PolyScalar] = None
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                factor = power(i, e)
                piece = factor if piece is None else piece * factor
            if piece is None:
                piece = PolyScalar.constant(vdim, order, 1)
            for e2, c2 in piece.terms.items():
                total = acc.get(e2, ZERO) + coeff * c2
                if total:
                    acc[e2] = total
                elif e2 in acc:
                    del acc[e2]
        return PolyScalar(vdim, order, acc)

    def lift(self, new_dim: int, var_map: Sequence[int]) -> "PolyScalar":
        """Reinterpret over more variables; old variable i becomes var_map[i]."""
        out: TermMap = {}
        for exps, coeff in self.terms.items():
            lifted = [0] * new_dim
            for i, e in enumerate(exps):
                lifted[var_map[i]] += e
            out[tuple(lifted)] = coeff
        return PolyScalar(new_dim, self.order, out)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"PolyScalar(dim={self.dim}, order={self.order}, {format_poly(self)})"


def format_poly(p: PolyScalar, var_names: Optional[Sequence[str]] = None) -> str:
    if p.is_zero():
        return "0"
    names = var_names or [f"x{i + 1}" for i in range(p.dim)]
    pieces = []
    for exps, coeff in p.sorted_terms():
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        coeff_str = str(coeff)
        needs_parens = ("+" in coeff_str[1:]) or ("-" in coeff_str[1:])
        if needs_parens:
            coeff_str = f"({coeff_str})"
        if factors:
            body = "*".join(factors)
            pieces.append(body if coeff == 1 else f"{coeff_str}*{body}")
        else:
            pieces.append(coeff_str)
    return " + ".join(pieces)


class Spectrum:
    """Eigenvalue tuple of a diagonal linear part."""

    __slots__ = ("values",)

    def __init__(self, values: Iterable[ScalarLike]):
        object.__setattr__(self, "values",
                           tuple(as_scalar(v) for v in values))

    def __setattr__(self, name, value):
        raise AttributeError("Spectrum is immutable")

    @classmethod
    def of(cls, *values: ScalarLike) -> "Spectrum":
        return cls(values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, index: int) -> GaussianRational:
        return self.values[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Spectrum):
            return NotImplemented
        return self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def dot(self, exps: Exponents) -> GaussianRational:
        """The combination <m, L> = sum of m_i * lambda_i."""
        total = ZERO
        for e, lam in zip(exps, self.values):
            if e:
                total = total + lam * e
        return total

    def gap(self, exps: Exponents, component: int) -> GaussianRational:
        """Eigenvalue <m, L> - lambda_j of the homological operator."""
        return self.dot(exps) - self.values[component]

    def is_resonant(self, exps: Exponents, component: int) -> bool:
        return not self.gap(exps, component)

    def scaled(self, factor: ScalarLike) -> "Spectrum":
        c = as_scalar(factor)
        return Spectrum(v * c for v in self.values)

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.values) + ")"

    def __repr__(self) -> str:
        return f"Spectrum{self}"


class PolyVectorField:
    """n truncated scalar components over n variables, optional spectrum."""

    __slots__ = ("dim", "order", "components", "spectrum")

    def __init__(self, components: Sequence[PolyScalar],
                 spectrum: Optional[Spectrum] = None):
        comps = tuple(components)
        if not comps:
            raise DimensionMismatchError("a vector field needs components")
        dim = comps[0].dim
        order = comps[0].order
        if len(comps) != dim:
            raise DimensionMismatchError(
                f"{len(comps)} components over {dim} variables")
        for c in comps:
            if c.dim != dim or c.order != order:
                raise DimensionMismatchError(
                    "components must share dimension and truncation order")
        if spectrum is not None:
            _validate_spectrum(comps, spectrum)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "spectrum", spectrum)

    def __setattr__(self, name, value):
        raise AttributeError("PolyVectorField is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, dim: int, order: int) -> "PolyVectorField":
        return cls([PolyScalar.zero(dim, order) for _ in range(dim)])

    @classmethod
    def from_terms(cls, dim: int, order: int,
                   terms: Iterable[Tuple[int, Exponents, ScalarLike]],
                   spectrum: Optional[Spectrum] = None) -> "PolyVectorField":
        """Build from (component, exponents, coefficient) triples, 0-based."""
        buckets: List[TermMap] = [{} for _ in range(dim)]
        for comp, exps, coeff in terms:
            key = tuple(exps)
            bucket = buckets[comp]
            bucket[key] = bucket.get(key, ZERO) + as_scalar(coeff)
        comps = [PolyScalar(dim, order, b) for b in buckets]
        return cls(comps, spectrum)

    def component(self, index: int) -> PolyScalar:
        return self.components[index]

    # -- inspection ----------------------------------------------------

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def max_degree(self) -> int:
        return max(c.max_degree() for c in self.components)

    def min_degree(self) -> int:
        degrees = [c.min_degree() for c in self.components if not c.is_zero()]
        return min(degrees) if degrees else 0

    def degree_part(self, degree: int) -> "PolyVectorField":
        return PolyVectorField([c.degree_part(degree) for c in self.components])

    def nonlinear_part(self) -> "PolyVectorField":
        return PolyVectorField([c.degree_range(2) for c in self.components])

    def linear_matrix(self) -> List[List[GaussianRational]]:
        """Rows of the degree-1 coefficient matrix."""
        rows = []
        for comp in self.components:
            row = []
            for j in range(self.dim):
                exps = tuple(1 if k == j else 0 for k in range(self.dim))
                row.append(comp.coefficient(exps))
            rows.append(row)
        return rows

    def terms(self) -> Iterator[Tuple[int, Exponents, GaussianRational]]:
        for i, comp in enumerate(self.components):
            for exps, coeff in comp.terms.items():
                yield i, exps, coeff

    def sorted_terms(self) -> List[Tuple[int, Exponents, GaussianRational]]:
        return sorted(self.terms(), key=lambda t: (grlex_key(t[1]), t[0]))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        if self.dim != other.dim:
            raise DimensionMismatchError("mixed dimensions in field sum")
        return PolyVectorField([a + b for a, b in
                                zip(self.components, other.components)])

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        if self.dim != other.dim:
            raise DimensionMismatchError("mixed dimensions in field difference")
        return PolyVectorField([a - b for a, b in
                                zip(self.components, other.components)])

    def __neg__(self) -> "PolyVectorField":
        return PolyVectorField([-c for c in self.components])

    def __mul__(self, value: ScalarLike) -> "PolyVectorField":
        return PolyVectorField([c * value for c in self.components])

    __rmul__ = __mul__

    def scalar_mul(self, phi: PolyScalar) -> "PolyVectorField":
        """The field phi(x) * f(x)."""
        return PolyVectorField([phi * c for c in self.components])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def truncated(self, order: int) -> "PolyVectorField":
        return PolyVectorField([c.truncated(order) for c in self.components],
                               self.spectrum)

    def with_spectrum(self, spectrum: Optional[Spectrum] = None) -> "PolyVectorField":
        """Attach a spectrum, extracting it from the linear part if omitted."""
        if spectrum is None:
            matrix = self.linear_matrix()
            for i in range(self.dim):
                for j in range(self.dim):
                    if i != j and matrix[i][j]:
                        raise NonDiagonalLinearPartError(
                            "linear part is not diagonal; conjugate it first")
            spectrum = Spectrum(matrix[i][i] for i in range(self.dim))
        return PolyVectorField(self.components, spectrum)

    def without_spectrum(self) -> "PolyVectorField":
        return PolyVectorField(self.components, None)

    def __str__(self) -> str:
        return "(" + ", ".join(format_poly(c) for c in self.components) + ")"

    def __repr__(self) -> str:
        return f"PolyVectorField(dim={self.dim}, order={self.order}, {self})"


def _validate_spectrum(comps: Sequence[PolyScalar], spectrum: Spectrum) -> None:
    dim = comps[0].dim
    if len(spectrum) != dim:
        raise DimensionMismatchError(
            f"spectrum of length {len(spectrum)} for dimension {dim}")
    zero_exps = (0,) * dim
    for j, comp in enumerate(comps):
        if comp.coefficient(zero_exps):
            raise NonDiagonalLinearPartError(
                "field does not vanish at the origin")
        for l in range(dim):
            exps = tuple(1 if k == l else 0 for k in range(dim))
            expected = spectrum[j] if l == j else ZERO
            if comp.coefficient(exps) != expected:
                raise NonDiagonalLinearPartError(
                    f"degree-1 part of component {j + 1} does not match "
                    f"the declared spectrum")


def linear_field(spectrum: Spectrum, order: int) -> PolyVectorField:
    """The diagonal linear field Ax for the given spectrum."""
    dim = len(spectrum)
    comps = []
    for j in range(dim):
        exps = tuple(1 if k == j else 0 for k in range(dim))
        comps.append(PolyScalar(dim, order, {exps: spectrum[j]}))
    return PolyVectorField(comps, spectrum)


def monomial_field(dim: int, order: int, exps: Exponents, component: int,
                   coeff: ScalarLike = 1) -> PolyVectorField:
    """The field coeff * x^m e_j (component 0-based)."""
    comps = [PolyScalar.zero(dim, order) for _ in range(dim)]
    comps[component] = PolyScalar.monomial(dim, order, exps, coeff)
    return PolyVectorField(comps)


def jacobian(f: PolyVectorField) -> List[List[PolyScalar]]:
    return [[f.components[i].partial(j) for j in range(f.dim)]
            for i in range(f.dim)]


def apply_derivation(f: PolyVectorField, phi: PolyScalar) -> PolyScalar:
    """The derivative of phi along f: X_f(phi) = sum f_i * d(phi)/dx_i.

    Correct through min(f.order, phi.order): the degree-d output only
    involves phi up to degree d (fields vanish at the origin here, so
    every f factor contributes at least one degree).
    """
    if f.dim != phi.dim:
        raise DimensionMismatchError("field and scalar dimensions differ")
    order = min(f.order, phi.order)
    total = PolyScalar.zero(phi.dim, order)
    for i in range(f.dim):
        dphi = phi.partial(i)
        total = total + f.components[i] * PolyScalar(phi.dim, order, dphi.terms)
    return total


def lie_bracket(f: PolyVectorField, g: PolyVectorField) -> PolyVectorField:
    """[f, g](x) = Dg(x) f(x) - Df(x) g(x), truncated to the smaller order.

    Fields are taken to vanish at the origin, so the degree-d part of the
    bracket only needs both inputs through degree d and the result is
    correct to min(f.order, g.order), which is the order it carries.  For
    polynomial inputs of degrees p and q the bracket has degree at most
    p + q - 1, so with both orders at least that the result is exact.
    """
    if f.dim != g.dim:
        raise DimensionMismatchError("bracket of fields in different dimensions")
    order = min(f.order, g.order)
    comps = []
    for i in range(f.dim):
        acc = PolyScalar.zero(f.dim, order)
        for j in range(f.dim):
            dg = g.components[i].partial(j)
            df = f.components[i].partial(j)
            acc = acc + PolyScalar(f.dim, order, dg.terms) * f.components[j]
            acc = acc - PolyScalar(f.dim, order, df.terms) * g.components[j]
        comps.append(acc)
    return PolyVectorField(comps)


def divergence(f: PolyVectorField) -> PolyScalar:
    total = PolyScalar.zero(f.dim, max(f.order - 1, 0))
    for i in range(f.dim):
        total = total + f.components[i].partial(i)
    return total


def restrict_to_axis(phi: PolyScalar, axis: int) -> List[GaussianRational]:
    """Coefficients of phi along one axis (all other variables set to 0).

    Entry k is the coefficient of the k-th power of the chosen variable,
    for k from 0 through the truncation order.
    """
    out = [ZERO] * (phi.order + 1)
    for exps, coeff in phi.terms.items():
        if all(e == 0 for i, e in enumerate(exps) if i != axis):
            out[exps[axis]] = coeff
    return out
