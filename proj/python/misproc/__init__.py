"""Python bindings for the misproc simulator."""

import json

from ._misproc import (
    Graph,
    ProbabilityCheck,
    SoundnessError,
    canonical_descriptor,
    lemma6_check,
    lemma7_check,
    trial_seed,
    verify_mis,
)
from . import _misproc

__all__ = [
    "Graph",
    "ProbabilityCheck",
    "SoundnessError",
    "canonical_descriptor",
    "is_good",
    "lemma6_check",
    "lemma7_check",
    "run_experiment",
    "switch_audit",
    "trial_seed",
    "verify_mis",
]


def run_experiment(graph, process="two-state", init="all-white", trials=100, seed=0,
                   max_rounds=None, threads=1, switch=None):
    """Runs independent trials and returns the summary document as a dict.

    The dict also carries per-trial ``stabilization_rounds`` (None when capped)
    and the ``trials_csv`` text.
    """
    cfg = {"process": process, "graph": canonical_descriptor(graph), "init": init,
           "trials": trials, "master_seed": seed, "threads": threads}
    if max_rounds is not None:
        cfg["max_rounds"] = max_rounds
    if switch:
        cfg["switch"] = dict(switch)
    return json.loads(_misproc._run_experiment(json.dumps(cfg)))


def is_good(graph, p, mode="exact", samples=20, seed=0):
    """Checks the six goodness properties; returns the report as a dict."""
    if mode not in ("exact", "sampled"):
        raise ValueError("mode must be 'exact' or 'sampled'")
    return json.loads(_misproc._is_good(graph, p, mode == "exact", samples, seed))


def switch_audit(graph, seed=0, rounds=None, a=None, zeta=None, diam_le_2=False):
    """Run-length audit of the logarithmic switch; returns the report as a dict."""
    a = 512.0 if a is None else a
    zeta = 1.0 / 128.0 if zeta is None else zeta
    rounds = graph.num_vertices if rounds is None else rounds
    return json.loads(_misproc._switch_audit(graph, seed, rounds, a, zeta, diam_le_2))
