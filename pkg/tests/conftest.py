import pytest

from multialg import corpus


@pytest.fixture(scope="session")
def multirings():
    return corpus.corpus_multirings()


@pytest.fixture(scope="session")
def multifields():
    return corpus.corpus_multifields()


@pytest.fixture(scope="session")
def real_reduced_mfs():
    return corpus.corpus_real_reduced_multifields()


@pytest.fixture(scope="session")
def real_reduced_mrs():
    return corpus.corpus_real_reduced_multirings()


@pytest.fixture(scope="session")
def special_groups():
    return corpus.corpus_special_groups()


@pytest.fixture(scope="session")
def real_semigroups():
    return corpus.corpus_real_semigroups()


@pytest.fixture(scope="session")
def sign_spaces():
    return corpus.corpus_sign_spaces()


@pytest.fixture(scope="session")
def multigroups():
    return corpus.corpus_multigroups()
