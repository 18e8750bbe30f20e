import contextlib
import json
import logging
import time

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
PARTIAL = "partial"

PLUMBING = "artifact plumbing"

# Check ids are matched against these prefixes, longest first
CITATIONS = {
    "form.eps_squared": "form rings: eps is its own inverse",
    "form.double_star": "form rings: x** = eps x eps*",
    "form.lower_bound": "form rings: R_eps is contained in Lambda",
    "form.upper_bound": "form rings: Lambda is contained in R^eps",
    "form.additive": "form rings: Lambda is an additive subgroup",
    "form.conjugation": "form rings: r* Lambda r is contained in Lambda",
    "ecom.additivity": "elementary commutator formulas: e_ij(r+s) = e_ij(r)e_ij(s)",
    "ecom.chain": "elementary commutator formulas: [e_ij(r), e_jk(s)] = e_ik(rs)",
    "ecom.disjoint": "elementary commutator formulas: [e_ij(r), e_kl(s)] = I",
    "prop.decomposition": "A_12 as a product of six elementary matrices",
    "prop.involution": "A_ij squares to the identity",
    "prop.commute": "the A_{i,i+1} pairwise commute",
    "prop.order": "the A_{i,i+1} generate an elementary abelian 2-group",
    "normal_conj": "e_12(2r) = e_12(r) A e_12(-r) A^-1",
    "b.block": "B_1 has corner block [[-1, 1], [-1, 0]]",
    "b.order": "each B_i has order 3",
    "b.commute": "the B_i pairwise commute",
    "b.subgroup": "the B_i generate an elementary abelian 3-group",
    "b.regeneration": "commutators with B_1 regenerate e_32(1)",
    "generation.upper": "e_ij(r) as a nested commutator of neighbouring generators",
    "generation.lower": "lower triangular e_ji(r) from upper generators and e_n1",
    "fuu.identity": "e_12(r) = [e_13(1), e_32(r)]",
    "fuu.central": "e_12(xy) is central in <e_13(x), e_32(y)>",
    "st.1": "Steinberg relation: x_ij(r) x_ij(s) = x_ij(r+s)",
    "st.2": "Steinberg relation: [x_ij(r), x_jk(s)] = x_ik(rs)",
    "st.3": "Steinberg relation: [x_ij(r), x_kl(s)] = 1",
    "ucom.1": "unitary commutator formulas: additivity",
    "ucom.2": "unitary commutator formulas: [rho_ij(a), rho_jk(b)] = rho_ik(ab)",
    "ucom.3": "unitary commutator formulas: [rho_ij(a), rho_j,si(b)]",
    "ucom.4": "unitary commutator formulas: [rho_ij(a), rho_j,sj(b)]",
    "membership.generator": "elementary unitary matrices lie in U_2n(R, Lambda)",
    "membership.phi": "membership agrees with A* phi A = phi",
    "membership.inverse": "block formula for the inverse of a unitary matrix",
    "duality": "rho_ij(a) = rho_sj,si(-a')",
    "fuu_unitary": "rho_1,n+1(r) as a product of unitary commutators",
    "gamma.chain": "rho_n,2n-1(r) rho_n,2n(x) as a product of commutators",
    "gamma.companion": "long root generators as commutators through index n-1 or n",
    "gamma.generation": "the n+1 distinguished subgroups generate EU_2n",
    "c.order": "each C_i has order 3 when 1 is in Lambda",
    "c.subgroup": "the C_i generate an elementary abelian 3-group",
    "embed.membership": "the hyperbolic embedding lands in U_2n(R, Lambda)",
    "embed.homomorphism": "the hyperbolic embedding is multiplicative",
    "stabilize": "U_2n embeds in U_2(n+1)",
    "closure": "closure of a generating set in GL_n of a finite ring",
    "nilpotent": "witness subgroups are nilpotent",
    "normal_closure": "normal generation by elementary matrices",
    "normal_theorem": "noncentral A normally generates a subgroup containing E_n(R,2R)",
    "perfect": "E_n(R) is perfect",
    "sr": "stable range condition sr_m",
    "lambda_sr": "Lambda-stable range condition",
    "k1": "GL_n(R)/E_n(R) is K_1(R) once n exceeds the stable range",
    "ku1": "U_2n(R,Lambda)/EU_2n(R,Lambda) is KU_1 once n exceeds the stable range",
}


def citation_for(check_id):
    """Longest matching citation prefix, or the plumbing tag"""
    best = None
    for prefix in CITATIONS:
        if not check_id.startswith(prefix):
            continue
        if len(check_id) > len(prefix) and check_id[len(prefix)] not in ".[":
            continue
        if best is None or len(prefix) > len(best):
            best = prefix

    return CITATIONS[best] if best else PLUMBING


def render_value(v):
    """JSON-safe rendering of witnesses: ring elements and matrices as text"""
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    if isinstance(v, (list, tuple)):
        return [render_value(e) for e in v]
    if isinstance(v, dict):
        return {str(k): render_value(e) for k, e in v.items()}
    return str(v)


def check_identity(report, check_id, params, evaluate, names=None):
    """
    Record whether both sides agree for every parameter tuple

    :param evaluate: called as evaluate(*p), returns (lhs, rhs)
    :param names: optional slot names used to label the witness
    """
    cases = 0
    for p in params:
        lhs, rhs = evaluate(*p)
        cases += 1
        if lhs != rhs:
            witness = {
                "params": dict(zip(names, p)) if names else list(p),
                "lhs": lhs,
                "rhs": rhs,
            }
            return report.check(check_id, False, witness, {"cases": cases})

    return report.check(check_id, True, detail={"cases": cases})


class CheckRecord(object):
    def __init__(self, check_id, status, witness=None, detail=None):
        self.check_id = check_id
        self.status = status
        self.witness = witness
        self.detail = detail
        self.citation = citation_for(check_id)

    def to_json(self):
        data = {"id": self.check_id, "citation": self.citation, "status": self.status}
        if self.witness is not None and self.status != PASS:
            data["witness"] = render_value(self.witness)
        if self.detail is not None:
            data["detail"] = render_value(self.detail)
        return data

    def __repr__(self):
        return "<CheckRecord {} {}>".format(self.check_id, self.status)


class Report(object):
    """
    Ordered collection of check records for one suite run

    Records serialise sorted by check id so that output does not depend on
    the order in which checks ran.
    """

    def __init__(self, suite, params=None):
        self.suite = suite
        self.params = params or {}
        self.records = []
        self.notes = []
        self.timings = {}

    def add(self, record):
        if record.status == FAIL:
            logger.warning("Check %s failed: %s", record.check_id, record.witness)
        self.records.append(record)
        return record

    def check(self, check_id, ok, witness=None, detail=None):
        return self.add(CheckRecord(check_id, PASS if ok else FAIL, witness, detail))

    def partial(self, check_id, witness=None, detail=None):
        logger.warning("Check %s is partial", check_id)
        return self.add(CheckRecord(check_id, PARTIAL, witness, detail))

    def note(self, text):
        self.notes.append(text)

    def merge(self, other):
        self.records.extend(other.records)
        self.notes.extend(n for n in other.notes if n not in self.notes)
        self.timings.update(other.timings)
        return self

    @contextlib.contextmanager
    def section(self, name):
        """Measure wall time spent producing a group of records"""
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.timings[name] = round(time.perf_counter() - start, 6)

    def failures(self):
        return [r for r in self.records if r.status == FAIL]

    @property
    def status(self):
        statuses = {r.status for r in self.records}
        if FAIL in statuses:
            return FAIL
        if PARTIAL in statuses:
            return PARTIAL
        return PASS

    @property
    def exit_code(self):
        return {PASS: 0, FAIL: 1, PARTIAL: 3}[self.status]

    def counts(self):
        acc = {PASS: 0, FAIL: 0, PARTIAL: 0}
        for r in self.records:
            acc[r.status] += 1
        return acc

    def to_json(self, timings=False):
        data = {
            "suite": self.suite,
            "params": render_value(self.params),
            "status": self.status,
            "counts": self.counts(),
            "checks": [
                r.to_json() for r in sorted(self.records, key=lambda r: r.check_id)
            ],
        }
        if self.notes:
            data["notes"] = sorted(self.notes)
        if timings:
            data["timings"] = dict(sorted(self.timings.items()))
        return data

    def dumps(self, timings=False):
        return json.dumps(
            self.to_json(timings=timings), indent=2, sort_keys=True, ensure_ascii=False
        )

    def save(self, path, timings=False):
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.dumps(timings=timings))
            f.write("\n")
        logger.info("Saved %s report to %s", self.suite, path)
