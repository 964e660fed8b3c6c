"""
Command-line interface
======================

The same computations are available from the shell as ``qpbw`` (or
``python -m qpbw``).  This script drives the CLI in-process and shows the JSON
it produces.
"""

import json
import contextlib
import io

from qpbw import cli


def run(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(list(argv))
    return code, buf.getvalue()


code, out = run("transition", "--algebra", "A2", "--from", "1,2,1", "--to", "2,1,2", "--bound", "1")
print("exit", code)
print(out)

code, out = run("intertwiner", "--algebra", "B2", "--bound", "2", "--compare-gamma")
print("exit", code, "| compare_gamma:", json.loads(out)["compare_gamma"])

code, out = run("verify", "--algebra", "G2", "--suite", "braid,pairing")
print("exit", code, "| summary:", json.loads(out)["summary"])

code, out = run("transition", "--algebra", "A2", "--bound", "1", "--format", "csv")
print(out)
