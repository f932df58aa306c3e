"""Cayley isomorphism checks for small groups.

Every check returns a ``Report``: the decoded JSON report plus the exit code
the command-line tool would use (0 confirmed, 2 refuted, 3 infeasible).
"""

import json
from dataclasses import dataclass

from . import _core
from ._core import CapExceeded, Config, InputError, InternalError, PreconditionError, ScopeInfeasible, group_order

__all__ = [
    "Report", "Config", "verify_theorem", "scan", "two_closure", "dci_graph", "dichotomy", "case_analysis",
    "babai_strong", "cayley", "canon", "iso", "aut", "group_order", "stable_json",
    "InputError", "PreconditionError", "ScopeInfeasible", "CapExceeded", "InternalError",
]


@dataclass
class Report:
    data: dict
    exit_code: int

    @property
    def verdict(self):
        return self.data["verdict"]

    @property
    def claim(self):
        return self.data["claim"]

    @property
    def witnesses(self):
        return self.data["witnesses"]


def _report(result):
    text, code = result
    return Report(json.loads(text), code)


def _config(**kw):
    return kw.pop("config", None) or Config(**kw)


def stable_json(report):
    """The report without timings; identical across runs with the same seed."""
    data = dict(report.data)
    data.pop("timings", None)
    return json.dumps(data, indent=2)


def verify_theorem(p, **kw):
    return _report(_core.verify_theorem(p, _config(**kw)))


def scan(group, mode="dci", **kw):
    return _report(_core.scan(_config(group=group, mode=mode, **kw)))


def two_closure(generators="", degree=0, **kw):
    if not isinstance(generators, str):
        generators = ";".join(generators)
    return _report(_core.two_closure(generators, degree, _config(**kw)))


def dci_graph(group, connection_set, **kw):
    return _report(_core.dci_graph(connection_set, _config(group=group, **kw)))


def dichotomy(**kw):
    return _report(_core.dichotomy(_config(**kw)))


def case_analysis(p, case, seed=0):
    return _report(_core.case_analysis(p, case, Config(seed=seed)))


def babai_strong(p=5, pi="", count=1000, seed=0):
    return _report(_core.babai_strong(p, pi, count, Config(seed=seed)))


def cayley(group, connection_set):
    return _report(_core.cayley(connection_set, Config(group=group)))


def canon(digraph_text):
    return _report(_core.canon(digraph_text))


def iso(first, second):
    return _report(_core.iso(first, second))


def aut(digraph_text):
    return _report(_core.aut(digraph_text))
