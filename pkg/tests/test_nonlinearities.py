import numpy as np
import pytest

from bifgraph.errors import ConfigError
from bifgraph.nonlinearities import REGISTRY, CubicFamily, Nonlinearity, get_nonlinearity

T = np.linspace(-1.7, 1.9, 13)


class _Shifted(Nonlinearity):
    name = "shifted"

    def f(self, t, s):
        return np.tanh(t) * (1.0 + s ** 2)

    def df(self, t, s):
        return (1.0 - np.tanh(t) ** 2) * (1.0 + s ** 2)

    def primitive(self, t, s):
        return np.log(np.cosh(t)) * (1.0 + s ** 2)


@pytest.mark.parametrize("name", sorted(REGISTRY))
@pytest.mark.parametrize("s", [-1.3, 0.0, 0.7])
def test_derivatives_match_finite_differences(name, s):
    nl = get_nonlinearity(name)
    h = 1e-6
    assert np.allclose(nl.f(T, s), (nl.primitive(T + h, s) - nl.primitive(T - h, s)) / (2 * h), atol=1e-5)
    assert np.allclose(nl.df(T, s), (nl.f(T + h, s) - nl.f(T - h, s)) / (2 * h), atol=1e-5)
    assert np.allclose(nl.df_ds(T, s), (nl.f(T, s + h) - nl.f(T, s - h)) / (2 * h), atol=1e-5)


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_vanish_at_zero(name):
    nl = get_nonlinearity(name)
    assert nl.f(np.zeros(1), 0.4)[0] == 0.0
    assert nl.primitive(np.zeros(1), 0.4)[0] == 0.0


def test_linear_in_s_means_unit_slope():
    for name, cls in REGISTRY.items():
        nl = get_nonlinearity(name)
        if cls.linear_in_s:
            assert np.allclose(nl.df_ds(T, 0.3), T)


def test_oddness():
    assert all(get_nonlinearity(name).is_odd for name in ("cubic", "sinh", "quintic"))
    assert not CubicFamily().is_odd
    assert CubicFamily(alpha=0.0).is_odd
    family = get_nonlinearity("cubic_family", {"alpha": 0.0, "beta": 2.0})
    assert np.allclose(family.f(-T, 0.5), -family.f(T, 0.5))


def test_default_parameter_derivative():
    nl = _Shifted()
    assert np.allclose(nl.df_ds(T, 0.8), 1.6 * np.tanh(T), atol=1e-6)
    assert repr(nl) == "_Shifted()"


def test_sinh_near_zero_parameter():
    nl = get_nonlinearity("sinh")
    assert np.allclose(nl.primitive(T, 1e-10), 0.5e-10 * T ** 2)


def test_registry_errors():
    with pytest.raises(ConfigError):
        get_nonlinearity("quartic")
    with pytest.raises(ConfigError):
        get_nonlinearity("cubic_family", {"gamma": 1.0})
