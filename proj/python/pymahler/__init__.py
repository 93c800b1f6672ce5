"""Python front end for the mahler core library."""

import json

from ._core import (
    CoreError,
    apply_character,
    dunford,
    eval_F0,
    hom_dimension,
    in_orbit,
    power_twist,
)
from ._core import run_job as _run_job

__all__ = [
    "MahlerError",
    "CoreError",
    "apply_character",
    "dunford",
    "eval_F0",
    "hom_dimension",
    "in_orbit",
    "power_twist",
    "run",
    "classify",
    "reduce",
    "connect",
    "generators",
    "factor",
    "check_morphism",
]


class MahlerError(Exception):
    """A failed job. `kind` is the error name, `exit_code` 2 or 3 as on the CLI."""

    def __init__(self, report, exit_code):
        super().__init__(f"{report.get('error')}: {report.get('message')}")
        self.kind = report.get("error")
        self.report = report
        self.exit_code = exit_code


def _text(x):
    if x is None or isinstance(x, str):
        return x
    return json.dumps(x)


def run(command, system, *, order=32, depth_cap=64, place=None, samples=None, twists=None, tol_res=1e-9):
    """Run a CLI command in process. `system` and friends take dicts or JSON text."""
    code, text = _run_job(
        command,
        _text(system),
        order=order,
        depth_cap=depth_cap,
        place=place,
        samples=_text(samples),
        twists=_text(twists),
        tol_res=tol_res,
    )
    report = json.loads(text)
    if code != 0:
        raise MahlerError(report, code)
    return report


def classify(system, **kw):
    return run("classify", system, **kw)


def reduce(system, **kw):
    return run("reduce", system, **kw)


def connect(system, **kw):
    return run("connect", system, **kw)


def generators(system, **kw):
    return run("generators", system, **kw)


def factor(system, **kw):
    return run("factor", system, **kw)


def check_morphism(job, **kw):
    return run("check-morphism", job, **kw)
