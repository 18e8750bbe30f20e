import json
import os
import uuid

import pytest

from elementary_groups.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_PASS, Cli

FREE = '{"kind": "free", "gens": ["r", "s"]}'
Z3 = '{"kind": "modular", "m": 3}'
SYMPLECTIC = '{"base": {"kind": "modular", "m": 3}, "epsilon": -1}'
ORTHOGONAL = '{"base": {"kind": "modular", "m": 3}, "epsilon": 1}'
FILE_PREFIX = "elementary_groups_tests_"


@pytest.fixture
def cli():
    return Cli(configure_logging=False)


def _run(argv):
    return Cli(configure_logging=False).run(argv)


class TestExitCodes(object):
    def test_pass(self, cli):
        assert cli.run(["verify", "ecom", "st", "--ring", FREE]) == EXIT_PASS

    def test_fail(self, capsys):
        # C_i are undefined when 1 is not in Lambda
        args = ["verify", "c-order", "--form", ORTHOGONAL, "--n", "2"]
        assert _run(args) == EXIT_FAIL
        assert "c.order" in capsys.readouterr().out

    def test_partial(self):
        assert _run(["closure", "--ring", Z3, "--cap", "50"]) == 3

    def test_normal_closure(self, capsys):
        assert _run(["normal-closure", "--ring", Z3, "--n", "3"]) == EXIT_PASS
        assert "normal-closure" in capsys.readouterr().out

    def test_config_errors(self, capsys):
        tests = (
            ["verify", "ecom", "--ring", '{"kind": "modular"'],
            ["verify", "ecom", "--ring", '{"kind": "octonions"}'],
            ["verify", "hodor", "--ring", FREE],
            ["verify", "ucom", "--ring", Z3],
            ["verify", "ecom", "--ring", Z3, "--form", SYMPLECTIC],
            ["verify", "ecom", "--ring", FREE, "--n", "0"],
            ["k1", "--ring", '{"kind": "integers"}'],
            ["closure", "--ring", '{"kind": "integers"}'],
            ["sr", "--ring", Z3, "--m", "x"],
            ["bogus"],
            [],
        )

        for argv in tests:
            assert _run(argv) == EXIT_CONFIG, argv

        capsys.readouterr()

    def test_help(self, capsys):
        assert _run(["--help"]) == EXIT_PASS
        assert _run(["verify", "--help"]) == EXIT_PASS
        assert "egroups" in capsys.readouterr().out

    def test_all_over_free_ring(self):
        assert _run(["verify", "all", "--ring", FREE, "--n", "3"]) == EXIT_PASS

    def test_ucom_over_symplectic_z3(self):
        assert _run(["verify", "ucom", "--form", SYMPLECTIC, "--n", "3"]) == EXIT_PASS

    def test_no_suites_is_an_empty_pass(self):
        assert _run(["verify", "--ring", FREE]) == EXIT_PASS


@pytest.fixture(scope="module", autouse=True)
def tear_down():
    """Clean up report files"""
    yield
    for f in os.listdir("/tmp"):
        if f.startswith(FILE_PREFIX):
            os.remove(os.path.join("/tmp", f))


class TestOutput(object):

    def test_json_to_stdout_is_deterministic(self, capsys):
        argv = ["verify", "all", "--form", SYMPLECTIC, "--seed", "4", "--json", "-"]
        assert _run(argv) == EXIT_PASS
        first = capsys.readouterr().out
        assert _run(argv) == EXIT_PASS
        second = capsys.readouterr().out

        assert first == second
        data = json.loads(first)
        assert data["status"] == "pass"
        assert data["params"]["seed"] == 4
        assert "timings" not in data
        ids = [c["id"] for c in data["checks"]]
        assert ids == sorted(ids)
        assert any(i.startswith("ecom.") for i in ids)
        assert any(i.startswith("ucom.") for i in ids)

    def test_timings(self, capsys):
        argv = ["sr", "--ring", Z3, "--json", "-", "--timings"]
        assert _run(argv) == EXIT_PASS
        data = json.loads(capsys.readouterr().out)
        assert "sr" in data["timings"]

    def test_json_file(self, capsys):
        path = "/tmp/{}{}.json".format(FILE_PREFIX, uuid.uuid4())
        assert _run(["sr", "--ring", Z3, "--m", "2", "--json", path]) == EXIT_PASS

        with open(path) as f:
            data = json.load(f)

        assert data["suite"] == "sr"
        assert [c["id"] for c in data["checks"]] == ["sr.monotone[3]", "sr[2]"]
        assert "pass" in capsys.readouterr().out

    def test_verbose_lists_every_check(self, capsys):
        assert _run(["lambda-sr", "--form", SYMPLECTIC, "-v"]) == EXIT_PASS
        out = capsys.readouterr().out
        assert "lambda_sr[1]" in out
        assert "Lambda-stable range" in out

    def test_quiet_lists_failures_only(self, capsys):
        assert _run(["verify", "form", "c-order", "--form", ORTHOGONAL]) == EXIT_FAIL
        out = capsys.readouterr().out
        assert "c.order" in out
        assert "form.additive" not in out
