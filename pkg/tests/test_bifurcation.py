"""Parameter families, the nondegeneracy matrix, and suspension."""

import pytest

from dulac.bifurcation import (
    ParamFamily,
    build_D,
    build_oscillator_D,
    det_nonsingular,
    oscillator_pattern,
    suspend,
)
from dulac.corpus import hopf_family, oscillator_family
from dulac.errors import (
    DegenerateEigenvaluesError,
    InputFormatError,
    ParameterCountError,
)
from dulac.poly import PolyScalar, Spectrum
from dulac.scalars import I, as_scalar


def poly1(consts, order=2):
    """Polynomial in one parameter from {exps: coeff}."""
    return PolyScalar(1, order, {k: as_scalar(v) for k, v in consts.items()})


def saddle_family():
    # lambda(eta) = (1 + eta, -1 + eta)
    return ParamFamily(2, 1, 2, a_entries=(
        (poly1({(0,): 1, (1,): 1}), 0),
        (0, poly1({(0,): -1, (1,): 1})),
    ))


def test_family_coercion_and_eigenvalues():
    fam = saddle_family()
    assert (fam.n, fam.p, fam.order) == (2, 1, 2)
    assert fam.eigenvalues() == Spectrum([1, -1])
    # bare scalars become constant polynomials in the parameters
    assert fam.a_entries[0][1].is_zero()
    with pytest.raises(AttributeError):
        fam.n = 3


def test_family_rejects_linear_in_x_terms():
    with pytest.raises(InputFormatError, match="x-degree at least 2"):
        ParamFamily(2, 1, 2, a_entries=((1, 0), (0, -1)),
                    f_terms=[(0, (1, 0, 1), 1)])


def test_family_rejects_offdiagonal_constant():
    with pytest.raises(InputFormatError, match="must be diagonal"):
        ParamFamily(2, 1, 2, a_entries=((1, 1), (0, -1)))


def test_build_d_saddle():
    D = build_D(saddle_family())
    assert D.layout == "eigenvalue-first"
    assert [[str(e) for e in row] for row in D.entries] == [["1", "1"], ["-1", "1"]]
    assert D.determinant() == as_scalar(2)
    assert det_nonsingular(D).nonsingular


def test_build_d_constant_family_is_singular():
    fam = ParamFamily(2, 1, 2, a_entries=((1, 0), (0, -1)))
    result = det_nonsingular(build_D(fam))
    assert not result.nonsingular
    assert result.determinant == as_scalar(0)


def test_build_d_hopf():
    D = build_D(hopf_family())
    assert [[str(e) for e in row] for row in D.entries] == [
        ["1*i", "1+2*i"],
        ["-1*i", "1-2*i"],
    ]
    assert str(D.determinant()) == "2*i"


def test_build_d_requires_p_equal_n_minus_1():
    fam = ParamFamily(2, 2, 2, a_entries=(
        (PolyScalar.constant(2, 2, as_scalar(1)), 0),
        (0, PolyScalar.constant(2, 2, as_scalar(-1)))))
    with pytest.raises(ParameterCountError, match="p = n - 1"):
        build_D(fam)


def test_build_d_rejects_degenerate_eigenvalues():
    with pytest.raises(DegenerateEigenvaluesError, match="symmetry arguments"):
        build_D(ParamFamily(2, 1, 2, a_entries=((1, 0), (0, 1))))
    mixed = ParamFamily(2, 1, 2, a_entries=((as_scalar(1) + I, 0), (0, -1)))
    with pytest.raises(DegenerateEigenvaluesError,
                       match="real or purely imaginary"):
        build_D(mixed)


def test_oscillator_pattern():
    assert oscillator_pattern(Spectrum([I, -I, 2 * I, -2 * I])) == (I, 2)
    assert oscillator_pattern(Spectrum([3 * I, -3 * I, 9 * I, -9 * I])) == (3 * I, 3)
    assert oscillator_pattern(Spectrum([1, -1])) is None
    assert oscillator_pattern(Spectrum([I, -I, I + 1, -I - 1])) is None
    # ratio must be an integer >= 2
    assert oscillator_pattern(Spectrum([2 * I, -2 * I, 3 * I, -3 * I])) is None


def test_oscillator_layout_and_determinant_relation():
    fam = oscillator_family()
    D_osc = build_oscillator_D(fam)
    assert D_osc.layout == "oscillator"
    assert [[str(e) for e in row] for row in D_osc.entries] == [
        ["1", "0", "0", "1"],
        ["1", "0", "-1", "-1"],
        ["0", "1", "1", "2"],
        ["0", "1", "0", "-2"],
    ]
    assert str(D_osc.determinant()) == "-2"
    D_std = build_D(fam)
    assert str(D_std.determinant()) == "2*i"
    i_omega0, m = oscillator_pattern(fam.eigenvalues())
    assert m == 2
    # det(eigenvalue-first) = -i*w0 * det(oscillator)
    assert D_std.determinant() == as_scalar(-1) * i_omega0 * D_osc.determinant()


def test_oscillator_layout_needs_the_pattern():
    with pytest.raises(DegenerateEigenvaluesError, match="oscillator layout"):
        build_oscillator_D(saddle_family())


def test_suspend_constant_family():
    fam = ParamFamily(2, 1, 2, a_entries=((1, 0), (0, -1)))
    field = suspend(fam)
    assert field.dim == 3
    assert [str(p) for p in field.components] == ["x1", "-1*x2", "0"]
    assert field.spectrum == Spectrum([1, -1, 0])


def test_suspend_hopf():
    field = suspend(hopf_family())
    assert [str(p) for p in field.components] == [
        "1*i*x1 + (1+2*i)*x1*x3 + x1^2*x2",
        "-1*i*x2 + (1-2*i)*x2*x3",
        "0",
    ]
    assert field.spectrum == Spectrum([I, -I, 0])
    assert field.order == 3
