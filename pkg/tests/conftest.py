"""Shared fixtures: golden data files and cached small-algebra lists."""

import pathlib

import pytest

from mfdlogic import enumerate_pomonoids, load_algebra, load_relation, parse_theory

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def housing_relation():
    return load_relation(str(DATA / "housing.json"))


@pytest.fixture(scope="session")
def housing_extra_relation():
    return load_relation(str(DATA / "housing_extra.json"))


@pytest.fixture(scope="session")
def needs_nonlinear():
    return parse_theory((DATA / "needs_nonlinear.theory").read_text())


@pytest.fixture(scope="session")
def no_additivity():
    return parse_theory((DATA / "no_additivity.theory").read_text())


@pytest.fixture(scope="session")
def no_accumulation():
    return parse_theory((DATA / "no_accumulation.theory").read_text())


@pytest.fixture(scope="session")
def nonlinear_algebra():
    return load_algebra(str(DATA / "nonlinear_pomonoid.json"))


@pytest.fixture(scope="session")
def pomonoids_upto_3():
    return tuple(enumerate_pomonoids(3))


@pytest.fixture(scope="session")
def pomonoids_upto_4():
    return tuple(enumerate_pomonoids(4))
