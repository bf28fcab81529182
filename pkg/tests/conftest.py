import random

import pytest

import acrw
from tests.support import SEED, SIGNATURES, signature


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture
def sig_plus():
    return signature('plus')


@pytest.fixture
def sig_nounits():
    return signature('nounits')


@pytest.fixture
def sig_units():
    return signature('units')


@pytest.fixture
def sig_intro():
    return signature('intro')


@pytest.fixture
def sig_lattice():
    return signature('lattice')


@pytest.fixture
def sig_max():
    return signature('max')


@pytest.fixture
def sig_dot():
    return signature('dot')


@pytest.fixture
def sig_free():
    return signature('free')


@pytest.fixture
def sig_small():
    return signature('small')


@pytest.fixture
def sig_file(tmp_path):
    """Write one of the test signatures to a file and return its path"""
    def write(name):
        path = tmp_path / ('%s.sig' % name)
        path.write_text(SIGNATURES[name])
        return str(path)
    return write


@pytest.fixture
def run_cli(tmp_path, monkeypatch, capsys):
    """Run acrw.main in a scratch directory; returns (exit status, stdout, stderr)"""
    monkeypatch.chdir(tmp_path)

    def run(*argv):
        status = acrw.main(list(argv))
        captured = capsys.readouterr()
        return status, captured.out, captured.err
    return run
