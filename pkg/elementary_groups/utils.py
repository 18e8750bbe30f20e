from elementary_groups.reports import FAIL, PARTIAL, PASS

_STATUS_COLOURS = {PASS: "\x1b[32m", FAIL: "\x1b[31m", PARTIAL: "\x1b[33m"}


def colour_status(status):
    return "{}{}\x1b[0m".format(_STATUS_COLOURS.get(status, ""), status)


def print_dict(data, indent_level=0):
    """Pretty-print a dict full of key-value pairs"""
    indent = "  " * indent_level

    def _format_key(k):
        return "{}{}{: <40}{}".format(indent, "\x1b[36m", k + ":", "\x1b[0m")

    for k, v in sorted(data.items()):
        if not isinstance(v, dict):
            print("{}{}".format(_format_key(k), v))
        else:
            print(_format_key(k))
            print_dict(v, indent_level=indent_level + 1)


def summarise(report):
    """
    Counts per status plus the ids of the checks which didn't pass, in
    check id order
    """
    data = report.to_json()
    return {
        "suite": data["suite"],
        "status": data["status"],
        "counts": data["counts"],
        "not passing": [c["id"] for c in data["checks"] if c["status"] != PASS],
    }


def print_report(report, verbose=False):
    """
    Print a report for a terminal: one line per check when verbose, otherwise
    only the checks which didn't pass, with their witnesses
    """
    data = report.to_json()
    print("\x1b[33m{}\x1b[0m {}".format(data["suite"], colour_status(data["status"])))
    print()

    for c in data["checks"]:
        if c["status"] == PASS and not verbose:
            continue

        print("{: <48} {}".format(c["id"], colour_status(c["status"])))
        if verbose:
            print("  \x1b[90m{}\x1b[0m".format(c["citation"]))
        if "witness" in c:
            witness = c["witness"]
            if not isinstance(witness, dict):
                witness = {"witness": witness}
            print_dict(witness, 1)

    if data["checks"]:
        print()
    print_dict({"counts": data["counts"]})
    for note in data.get("notes", []):
        print("note: {}".format(note))
