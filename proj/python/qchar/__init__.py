"""Exact q-series for Whittaker vectors and principal-subspace characters."""

import json

from . import _qchar
from ._qchar import QcharError

__all__ = ["QcharError", "jd", "fermionic_series", "character", "verify_eigen", "termsum_equal", "verify", "run_cli"]


def jd(n, d, source="explicit"):
    """J_d as a dict of factored terms."""
    return json.loads(_qchar.jd(n, list(d), source))


def fermionic_series(n, d, r=0, window=(4, -20, 60)):
    return json.loads(_qchar.fermionic_series(n, list(d), r, tuple(window)))


def character(n, k, method="fermionic", window=(4, -20, 60)):
    return json.loads(_qchar.character(n, k, method, tuple(window)))


def verify_eigen(n, cutoff, source="explicit"):
    return _qchar.verify_eigen(n, cutoff, source)


def termsum_equal(a, b, trials=12, seed=1):
    return _qchar.termsum_equal(json.dumps(a), json.dumps(b), trials, seed)


def run_cli(*args):
    return _qchar.run_cli([str(a) for a in args])


def verify(identity, **params):
    """Run one identity check; returns the JSON report as a dict.

    Keyword arguments map to flags, e.g. ``verify("theorem31", n=2, k=1)``.
    Sequences are joined with commas.
    """
    args = ["verify", "--identity", identity]
    for key, value in params.items():
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        args += ["--" + key, str(value)]
    code, out, err = run_cli(*args)
    if code == 2:
        raise QcharError(err.strip())
    return json.loads(out)
