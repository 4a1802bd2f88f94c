"""Run configuration for the verification CLI.

One INI document; every key has a default so no file is needed::

    [verify]
    workers = 1
    output_dir = verify-out
    seed = 0

    [quadrature]
    rel_tol = 1e-9
    abs_tol = 1e-13
    s_max = auto

    [tolerances]
    SYM67 = 1e-6

    [grids]
    LAM-NORM = [{"a": 2.0, "b": 1.0, "c": 1.0}]
"""

from __future__ import annotations

import configparser
import json
from dataclasses import dataclass, field

from .quadrature import QuadratureSpec


@dataclass(frozen=True)
class Config:
    workers: int = 1
    output_dir: str = "verify-out"
    seed: int = 0
    rel_tol: float = 1e-9
    abs_tol: float = 1e-13
    s_max: object = "auto"
    tolerances: dict = field(default_factory=dict)
    grids: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def __hash__(self):
        return hash((self.workers, self.output_dir, self.seed, self.rel_tol, self.abs_tol, self.s_max))

    def spec(self):
        return QuadratureSpec(rel_tol=self.rel_tol, abs_tol=self.abs_tol, s_max_policy=self.s_max)

    def context(self):
        from .checks import RunContext

        return RunContext(self.spec(), self.seed)

    def tolerance_for(self, id, default):
        return float(self.tolerances.get(id, default))

    def grid_for(self, id, default):
        return [dict(p) for p in self.grids.get(id, default)]


def _parse_s_max(text):
    text = text.strip()
    return "auto" if text == "auto" else float(text)


def load_config(path=None, text=None):
    """Config from an INI file or string; unknown keys are errors."""
    cp = configparser.ConfigParser()
    cp.optionxform = str  # keep check ids as written
    if path is not None:
        with open(path) as fh:
            cp.read_file(fh)
    elif text is not None:
        cp.read_string(text)
    allowed = {"verify": {"workers", "output_dir", "seed"}, "quadrature": {"rel_tol", "abs_tol", "s_max"},
               "tolerances": None, "grids": None}
    for sec in cp.sections():
        if sec not in allowed:
            raise ValueError("unknown config section [%s]" % sec)
        if allowed[sec] is not None:
            extra = set(cp[sec]) - allowed[sec]
            if extra:
                raise ValueError("unknown keys in [%s]: %s" % (sec, ", ".join(sorted(extra))))
    kw = {}
    if cp.has_section("verify"):
        v = cp["verify"]
        if "workers" in v:
            kw["workers"] = v.getint("workers")
        if "output_dir" in v:
            kw["output_dir"] = v["output_dir"]
        if "seed" in v:
            kw["seed"] = v.getint("seed")
    if cp.has_section("quadrature"):
        q = cp["quadrature"]
        if "rel_tol" in q:
            kw["rel_tol"] = q.getfloat("rel_tol")
        if "abs_tol" in q:
            kw["abs_tol"] = q.getfloat("abs_tol")
        if "s_max" in q:
            kw["s_max"] = _parse_s_max(q["s_max"])
    if cp.has_section("tolerances"):
        kw["tolerances"] = {k: float(v) for k, v in cp["tolerances"].items()}
    if cp.has_section("grids"):
        grids = {}
        for k, v in cp["grids"].items():
            pts = json.loads(v)
            if not isinstance(pts, list) or not all(isinstance(p, dict) for p in pts):
                raise ValueError("grid for %s must be a JSON list of objects" % k)
            grids[k] = pts
        kw["grids"] = grids
    return Config(**kw)
