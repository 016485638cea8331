"""
Pytest configuration and fixtures.
Shared groups, standard division algebras and fixture documents.
"""

import logging
import os
import sys

import pytest

# Add gradings to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'gradings'))

from abelian import Bicharacter, FinAbGroup, FiniteSubgroup, enumerate_bicharacters, enumerate_subgroups
from cyclo import Cyclo, root_of_unity
from division import GradedDivisionAlgebra
from interchange import parse_params

FIXTURES_DIR = os.path.join(os.path.dirname(__file__), 'fixtures')


def fixture_path(name):
    """Path of a parameter document under tests/fixtures."""
    return os.path.join(FIXTURES_DIR, f"{name}.params")


def fixture_names():
    return sorted(f[:-len('.params')] for f in os.listdir(FIXTURES_DIR) if f.endswith('.params'))


def load_params(name):
    with open(fixture_path(name)) as f:
        return parse_params(f.read())


def twisted_group_division(subgroup, beta_tilde):
    """F^sigma T with sigma bilinear over the basis of T and commutation factor beta."""
    beta = beta_tilde.parity_twist()
    basis = [b for b, _ in subgroup.basis]
    coords = subgroup.coordinates
    r = len(basis)
    cocycle = {}
    for t in subgroup.elements:
        for s in subgroup.elements:
            a, c = coords[t], coords[s]
            k = sum(a[i] * c[j] * beta.exponent(basis[i], basis[j])
                    for i in range(r) for j in range(i + 1, r))
            cocycle[(t, s)] = root_of_unity(beta.order, k)
    return GradedDivisionAlgebra(subgroup, cocycle, name=f"F^sigma[{subgroup.order}]")


def division_sweep():
    """(T, beta~) for every support of order <= 4 in Z2# and (Z2 x Z2)#."""
    found = []
    for group in (FinAbGroup([2]), FinAbGroup([2, 2])):
        for T in enumerate_subgroups(group, max_order=4):
            for beta_tilde in enumerate_bicharacters(T, kind='skew'):
                if beta_tilde.parity_twist().is_alternating():
                    found.append((T, beta_tilde))
    return found


@pytest.fixture(autouse=True)
def reset_logging():
    """Drop handlers installed by cli.setup_logging so captured streams stay fresh."""
    yield
    logger = logging.getLogger('gradings')
    for handler in list(logger.handlers):
        logger.removeHandler(handler)


@pytest.fixture
def trivial_group():
    return FinAbGroup(())


@pytest.fixture
def z():
    return FinAbGroup([0])


@pytest.fixture
def z2():
    return FinAbGroup([2])


@pytest.fixture
def z4():
    return FinAbGroup([4])


@pytest.fixture
def z2z2():
    return FinAbGroup([2, 2])


@pytest.fixture
def z2z4():
    return FinAbGroup([2, 4])


@pytest.fixture
def pauli(z2z2):
    """Even T = Z2 x Z2 with the nondegenerate sign bicharacter."""
    gens = [z2z2.sharp((1, 0)), z2z2.sharp((0, 1))]
    T = FiniteSubgroup(z2z2, gens)
    minus = Cyclo.rational(-1)
    beta = Bicharacter.from_generator_values(T, gens, [[1, minus], [minus, 1]])
    return T, beta


@pytest.fixture
def params_loader():
    """Load a fixture parameter document by name."""
    return load_params


@pytest.fixture
def fixture_file():
    """Resolve a fixture document path by name."""
    return fixture_path
