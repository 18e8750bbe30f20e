import json
import logging
import os

from elementary_groups.formring import GENERATED, MAXIMAL, MINIMAL, FormRing
from elementary_groups.rings import (
    RingSpecError,
    UnsupportedRingOperation,
    ring_from_spec,
)
from elementary_groups.tokeniser import TokeniserException

logger = logging.getLogger(__name__)


class ConfigError(Exception):
    def __init__(self, msg):
        super(ConfigError, self).__init__(msg)


def read_json(value):
    """
    Decode a spec given inline or, with a leading @, from a file

    :raises ConfigError: if the file can't be read, the JSON is malformed
        (with its line and column) or the top level is not an object
    """
    source = "inline spec"
    text = value

    if value.startswith("@"):
        source = value[1:]
        if not os.path.exists(source):
            raise ConfigError("No such spec file {}".format(source))
        try:
            with open(source, "r") as f:
                text = f.read()
        except IOError as e:
            logger.exception("Error reading spec file %s", source)
            raise ConfigError("Cannot read spec file {}: {}".format(source, e))

    try:
        data = json.loads(text)
    except ValueError as e:
        logger.debug("Malformed JSON in %s: %s", source, e)
        raise ConfigError(
            "Malformed JSON in {} at line {} column {}: {}".format(
                source, e.lineno, e.colno, e.msg
            )
        )

    if not isinstance(data, dict):
        raise ConfigError("Expected a JSON object in {}".format(source))

    logger.debug("Loaded spec from %s", source)
    return data


def load_ring(value):
    """Ring from a spec like {"kind": "modular", "m": 5}"""
    data = read_json(value)
    try:
        return ring_from_spec(data)
    except (RingSpecError, UnsupportedRingOperation) as e:
        raise ConfigError(str(e))


def form_from_spec(data):
    """
    Form ring from {"base": <ring spec>, "epsilon": 1 or -1,
    "lambda": "maximal" | "minimal" | {"generated": [literals]}}
    """
    try:
        base = ring_from_spec(data["base"])
    except KeyError:
        raise ConfigError("Form spec is missing its base ring")
    except (RingSpecError, UnsupportedRingOperation) as e:
        raise ConfigError(str(e))

    eps = data.get("epsilon")
    if eps not in (None, 1, -1):
        raise ConfigError("epsilon must be 1 or -1, got {!r}".format(eps))

    lam = data.get("lambda", MAXIMAL)
    generators = ()
    try:
        if isinstance(lam, dict):
            literals = lam[GENERATED]
            generators = [base.parse(s) for s in literals]
            strategy = GENERATED
        elif lam in (MINIMAL, MAXIMAL):
            strategy = lam
        else:
            raise ConfigError("Unknown form parameter {!r}".format(lam))
    except (KeyError, AttributeError, TypeError):
        raise ConfigError("Generated form parameters need a list of literals")
    except TokeniserException as e:
        raise ConfigError("Bad form parameter generator: {}".format(e))

    try:
        return FormRing(base, eps=eps, strategy=strategy, generators=generators)
    except UnsupportedRingOperation as e:
        raise ConfigError(str(e))


def load_form(value):
    return form_from_spec(read_json(value))
