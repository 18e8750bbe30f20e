import pytest

from elementary_groups import suites
from elementary_groups.finite import CapExceededError
from elementary_groups.formring import FormRing
from elementary_groups.reports import FAIL, PARTIAL, PASS
from elementary_groups.rings import FreeRing, Integers, ModularIntegers
from elementary_groups.suites import SuiteConfig, SuiteConfigError, expand, run_suites


@pytest.fixture
def symplectic():
    return FormRing(ModularIntegers(3), eps=-1)


class TestSuiteConfig(object):
    def test_ring_defaults_to_form_base(self, symplectic):
        config = SuiteConfig("ucom", form=symplectic)
        assert config.ring == ModularIntegers(3)
        assert config.require_form() is symplectic
        assert set(config.params) == {"cap", "m", "n", "seed", "trials", "ring", "form"}

    def test_validation(self):
        tests = ({"n": 0}, {"cap": 0})

        for kwargs in tests:
            with pytest.raises(SuiteConfigError):
                SuiteConfig("ecom", ring=Integers(), **kwargs)

    def test_requirements(self):
        config = SuiteConfig("ucom", ring=Integers())
        with pytest.raises(SuiteConfigError):
            config.require_form()
        with pytest.raises(SuiteConfigError):
            SuiteConfig("ecom").require_ring()

    def test_rng_depends_on_seed_and_suite(self):
        config = SuiteConfig("ecom", ring=Integers(), seed=3)
        assert config.rng("ecom").random() == config.rng("ecom").random()
        assert config.rng("ecom").random() != config.rng("st").random()
        other = SuiteConfig("ecom", ring=Integers(), seed=4)
        assert config.rng("ecom").random() != other.rng("ecom").random()


def test_expand(symplectic):
    ring_only = SuiteConfig("all", ring=Integers())
    assert expand(["all"], ring_only) == sorted(suites.LINEAR_SUITES)

    with_form = SuiteConfig("all", form=symplectic)
    names = expand(["ucom", "all"], with_form)
    assert names[0] == "ucom"
    assert names.count("ucom") == 1
    assert set(names) == set(suites.VERIFY_SUITES)

    assert expand(["all"], SuiteConfig("all")) == []


class TestRunSuites(object):
    def test_empty(self):
        report = run_suites([], SuiteConfig("verify"))
        assert report.status == PASS
        assert not report.records

    def test_unknown(self):
        with pytest.raises(SuiteConfigError):
            run_suites(["hodor"], SuiteConfig("hodor", ring=Integers()))

    def test_sections_are_timed(self):
        config = SuiteConfig("ecom+st", ring=FreeRing(["r", "s"]))
        report = run_suites(["ecom", "st"], config)
        assert report.status == PASS
        assert set(report.timings) == {"ecom", "st"}
        assert report.suite == "ecom+st"

    def test_same_config_same_report(self):
        config = SuiteConfig("ecom", ring=Integers(), trials=4, seed=9)
        first = suites.run_suite(config).dumps()
        config = SuiteConfig("ecom", ring=Integers(), trials=4, seed=9)
        second = suites.run_suite(config)
        assert first == second.dumps()

    def test_b_identities_note_odd_sizes(self):
        config = SuiteConfig("b", ring=ModularIntegers(5))
        report = run_suites(["b-identities"], config)
        assert report.status == PASS
        assert report.notes == ["B identities checked at size 4"]

    def test_cap_becomes_partial(self, monkeypatch):
        def _raise(config, report, rng):
            raise CapExceededError("too big")

        monkeypatch.setitem(suites.SUITES, "closure", _raise)
        config = SuiteConfig("closure", ring=ModularIntegers(3))
        report = run_suites(["closure"], config)
        assert report.status == PARTIAL
        assert report.records[0].check_id == "closure.cap"

    def test_failing_suite(self):
        F = FormRing(ModularIntegers(3), eps=1)
        report = run_suites(["c-order"], SuiteConfig("c-order", form=F, n=2))
        assert report.status == FAIL
