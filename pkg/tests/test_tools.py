import pytest

from modules.oracle import find_complementary_exhaustive
from modules.tools import debug, derive_seed, log, make_rng, set_verbosity

from conftest import tours


@pytest.fixture(autouse=True)
def quiet():
    yield
    set_verbosity("low")


class TestLog:
    def test_brackets_survive(self, capsys):
        log("cli", "iter_n: [type=greater_than_equal, input_value=0]")
        err = capsys.readouterr().err
        assert "[cli]" in err
        assert "[type=greater_than_equal, input_value=0]" in err

    def test_stage_markup_is_not_interpreted(self, capsys):
        log("bold", "[red]not a style[/red]")
        err = capsys.readouterr().err
        assert "[bold] [red]not a style[/red]" in err

    def test_debug_needs_high_verbosity(self, capsys):
        debug("oracle", "hidden")
        assert capsys.readouterr().err == ""
        set_verbosity("high")
        debug("oracle", "shown")
        assert "[oracle] shown" in capsys.readouterr().err

    def test_oracle_reports_its_label(self, capsys):
        set_verbosity("high")
        find_complementary_exhaustive(*tours((1, 2, 3, 4), (1, 2, 4, 3)))
        assert "n=4: condition fails after" in capsys.readouterr().err


class TestSeeds:
    def test_derive_seed_is_stable_and_spread(self):
        assert derive_seed(1, 8, 0) == derive_seed(1, 8, 0)
        assert len({derive_seed(1, 8, t) for t in range(50)}) == 50
        assert 0 <= derive_seed(-5, 2**70) < 2**63

    def test_streams_are_independent(self):
        a = make_rng(3, 0).integers(0, 2**32, 8).tolist()
        assert a == make_rng(3, 0).integers(0, 2**32, 8).tolist()
        assert a != make_rng(3, 1).integers(0, 2**32, 8).tolist()
