import logging
import random

from elementary_groups import elementary, finite, steinberg, unitary
from elementary_groups.formring import validate_form_ring
from elementary_groups.reports import Report
from elementary_groups.rings import DEFAULT_TRIALS
from elementary_groups.specs import ConfigError

logger = logging.getLogger(__name__)


class SuiteConfigError(ConfigError):
    def __init__(self, msg):
        super(SuiteConfigError, self).__init__(msg)


class SuiteConfig(object):
    """Everything a suite run depends on; equal configs give identical reports"""

    def __init__(
        self,
        suite,
        ring=None,
        form=None,
        n=3,
        trials=DEFAULT_TRIALS,
        seed=0,
        cap=finite.DEFAULT_CAP,
        m=1,
        output=None,
        timings=False,
    ):
        if n < 1:
            raise SuiteConfigError("n must be positive, got {}".format(n))
        if cap < 1:
            raise SuiteConfigError("cap must be positive, got {}".format(cap))

        self.suite = suite
        self.form = form
        self.ring = ring if ring is not None else (form.base if form else None)
        self.n = n
        self.trials = trials
        self.seed = seed
        self.cap = cap
        self.m = m
        self.output = output
        self.timings = timings

    def rng(self, suite=None):
        """A generator seeded from the seed and the suite, so order doesn't matter"""
        return random.Random("{}:{}".format(self.seed, suite or self.suite))

    @property
    def params(self):
        acc = {
            "cap": self.cap,
            "m": self.m,
            "n": self.n,
            "seed": self.seed,
            "trials": self.trials,
        }
        if self.ring is not None:
            acc["ring"] = self.ring.to_json()
        if self.form is not None:
            acc["form"] = self.form.to_json()
        return acc

    def require_ring(self):
        if self.ring is None:
            raise SuiteConfigError("Suite {} needs --ring or --form".format(self.suite))
        return self.ring

    def require_form(self):
        if self.form is None:
            raise SuiteConfigError("Suite {} needs --form".format(self.suite))
        return self.form


def _ecom(config, report, rng):
    elementary.verify_ecom(
        config.n, config.require_ring(), trials=config.trials, rng=rng, report=report
    )


def _prop(config, report, rng):
    elementary.check_prop(max(config.n, 2), config.require_ring(), report=report)


def _normal_conj(config, report, rng):
    elementary.normal_conjugation_report(
        max(config.n, 3),
        config.require_ring(),
        trials=config.trials,
        rng=rng,
        report=report,
    )


def _b_identities(config, report, rng):
    # B_i live in even sizes; the regeneration identities need index 3
    size = max(4, config.n + config.n % 2)
    if size != config.n:
        report.note("B identities checked at size {}".format(size))
    ring = config.require_ring()
    elementary.check_b_family(size, ring, report=report)
    elementary.b_regeneration_report(ring, size, report=report)


def _generation(config, report, rng):
    elementary.verify_generation_identities(
        max(config.n, 2),
        config.require_ring(),
        trials=config.trials,
        rng=rng,
        report=report,
    )


def _fuu(config, report, rng):
    elementary.fuu_linear_report(
        config.require_ring(),
        max(config.n, 3),
        trials=config.trials,
        rng=rng,
        report=report,
    )


def _st(config, report, rng):
    steinberg.verify_st_relations(
        config.n, config.require_ring(), trials=config.trials, rng=rng, report=report
    )


def _form(config, report, rng):
    F = config.require_form()
    report.merge(validate_form_ring(F, trials=config.trials, rng=rng))


def _ucom(config, report, rng):
    F = config.require_form()
    unitary.verify_ucom(config.n, F, trials=config.trials, rng=rng, report=report)
    unitary.membership_report(config.n, F, trials=config.trials, rng=rng, report=report)
    unitary.check_duality(config.n, F, trials=config.trials, rng=rng, report=report)


def _fuu_unitary(config, report, rng):
    unitary.fuu_unitary_report(
        max(config.n, 2),
        config.require_form(),
        trials=config.trials,
        rng=rng,
        report=report,
    )


def _gamma(config, report, rng):
    unitary.verify_gamma_identities(
        max(config.n, 3),
        config.require_form(),
        trials=config.trials,
        rng=rng,
        report=report,
    )


def _c_order(config, report, rng):
    unitary.c_family_report(config.n, config.require_form(), report=report)


def _embed(config, report, rng):
    unitary.embed_report(
        config.n, config.require_form(), trials=config.trials, rng=rng, report=report
    )


def _closure(config, report, rng):
    ring = config.require_ring()
    finite.closure_report(ring, config.n, cap=config.cap, report=report)


def _normal_closure(config, report, rng):
    ring = config.require_ring()
    finite.normal_generation_report(ring, config.n, cap=config.cap, report=report)
    finite.check_normal_theorem(ring, config.n, cap=config.cap, report=report)


def _perfect(config, report, rng):
    ring = config.require_ring()
    finite.perfect_report(ring, config.n, cap=config.cap, report=report)


def _nilpotent(config, report, rng):
    F = config.form if config.n >= 3 else None
    finite.nilpotent_report(
        config.require_ring(), config.n, F=F, cap=config.cap, report=report
    )


def _sr(config, report, rng):
    finite.sr_report(config.require_ring(), config.m, report=report)


def _lambda_sr(config, report, rng):
    finite.lambda_sr_report(config.require_form(), config.m, report=report)


def _k1(config, report, rng):
    finite.k1_stabilization_check(
        config.require_ring(), config.n, cap=config.cap, report=report
    )


def _ku1(config, report, rng):
    finite.ku1_stabilization_probe(
        config.require_form(),
        config.n,
        cap=config.cap,
        report=report,
        seed=config.seed,
    )


LINEAR_SUITES = {
    "ecom": _ecom,
    "prop": _prop,
    "normal-conj": _normal_conj,
    "b-identities": _b_identities,
    "generation": _generation,
    "fuu": _fuu,
    "st": _st,
}

UNITARY_SUITES = {
    "form": _form,
    "ucom": _ucom,
    "fuu-unitary": _fuu_unitary,
    "gamma": _gamma,
    "c-order": _c_order,
    "embed": _embed,
}

FINITE_SUITES = {
    "closure": _closure,
    "normal-closure": _normal_closure,
    "perfect": _perfect,
    "nilpotent": _nilpotent,
    "sr": _sr,
    "lambda-sr": _lambda_sr,
    "k1": _k1,
    "ku1": _ku1,
}

VERIFY_SUITES = dict(LINEAR_SUITES, **UNITARY_SUITES)
SUITES = dict(VERIFY_SUITES, **FINITE_SUITES)


def expand(names, config):
    """Suite names with `all` replaced by every verify suite the specs allow"""
    acc = []
    for name in names:
        if name != "all":
            acc.append(name)
            continue
        if config.ring is not None:
            acc.extend(sorted(LINEAR_SUITES))
        if config.form is not None:
            acc.extend(sorted(UNITARY_SUITES))

    seen = set()
    return [s for s in acc if not (s in seen or seen.add(s))]


def _run_one(name, config, report):
    f = SUITES.get(name)
    if not f:
        raise SuiteConfigError("Unknown suite '{}'".format(name))

    logger.debug("Running suite %s", name)
    with report.section(name):
        try:
            f(config, report, config.rng(name))
        except finite.CapExceededError as e:
            logger.warning("Suite %s hit the cap: %s", name, e)
            report.partial("{}.cap".format(name), detail={"error": str(e)})


def run_suite(config):
    """Run the configured suite (`all` included) into a single Report"""
    return run_suites([config.suite], config)


def run_suites(names, config):
    """
    Run suites sequentially into one Report. No names gives an empty,
    passing report.
    """
    names = expand(names, config)
    report = Report(config.suite, config.params)
    for name in names:
        _run_one(name, config, report)

    logger.debug("Suites %s finished: %s", names, report.status)
    return report
