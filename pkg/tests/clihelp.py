"""Helpers for driving ``pan`` in-process and validating its JSON output."""
import io
import json
from functools import lru_cache
from importlib import resources

import jsonschema

from panopticon.cli import run_cli


@lru_cache(maxsize=None)
def schema(kind: str) -> dict:
    return json.loads(resources.files("panopticon").joinpath("schemas", f"{kind}.json").read_text())


def pan(*argv, stdin=None):
    """Run the CLI; returns ``(exit_code, stdout, stderr)``."""
    import sys
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdin
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        code = run_cli([str(a) for a in argv], stdout=out, stderr=err)
    finally:
        sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def pan_json(*argv, stdin=None):
    code, out, err = pan(*argv, "--format", "json", stdin=stdin)
    doc = json.loads(out) if out.strip() else None
    if doc is not None:
        assert out.count("\n") == 1, "json mode must emit exactly one document"
        jsonschema.validate(doc, schema(doc["kind"]))
    return code, doc, err
