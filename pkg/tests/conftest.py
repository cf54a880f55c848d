import numpy as np
import pytest

from lorentz_crofton import reparametrize_arclength, tangent_indicatrix
from lorentz_crofton import gallery


@pytest.fixture(scope="session")
def circle_arc():
    return reparametrize_arclength(gallery.circle(1.0))


@pytest.fixture(scope="session")
def clam05_arc():
    return reparametrize_arclength(gallery.clam_shell(0.5))


@pytest.fixture(scope="session")
def clam06_arc():
    return reparametrize_arclength(gallery.clam_shell(0.6))


@pytest.fixture(scope="session")
def trefoil_arc():
    return reparametrize_arclength(gallery.trefoil_spacelike(0.05))


@pytest.fixture(scope="session")
def equator_g():
    return gallery.equator()


@pytest.fixture(scope="session")
def wobble1_g():
    return gallery.wobble(0.2, 3, 1)


@pytest.fixture(scope="session")
def wobble22_g():
    return gallery.wobble(0.3, 2, 2)


@pytest.fixture(scope="session")
def quad05_g():
    return gallery.quad_perturb(0.5)


@pytest.fixture(scope="session")
def clam05_ind(clam05_arc):
    return tangent_indicatrix(clam05_arc)


@pytest.fixture(scope="session")
def trefoil_ind(trefoil_arc):
    return tangent_indicatrix(trefoil_arc)


@pytest.fixture(scope="session")
def gallery_spherical(equator_g, wobble1_g, wobble22_g, quad05_g, clam05_ind,
                      trefoil_ind):
    return [equator_g, wobble1_g, wobble22_g, quad05_g, clam05_ind, trefoil_ind]


@pytest.fixture(scope="session")
def crofton_curves(equator_g, wobble1_g, wobble22_g, clam05_ind):
    """The curve set used by the Crofton acceptance criteria."""
    return [equator_g, wobble1_g, wobble22_g, clam05_ind]


def simpson_oracle(f, a, b, n=20001):
    """Brute-force composite Simpson quadrature, independent of the library."""
    if n % 2 == 0:
        n += 1
    x = np.linspace(a, b, n)
    y = np.asarray(f(x), dtype=float)
    h = (b - a) / (n - 1)
    return h / 3.0 * (y[0] + y[-1] + 4.0 * np.sum(y[1:-1:2]) + 2.0 * np.sum(y[2:-1:2]))
