"""Reduction pipelines with optional enumeration, and their JSON reports."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .analysis import compare_model
from .core import (InvariantViolation, LatticeBasis, ReductionReport, UnimodularTransform,
                   gram, is_obtuse, obtuseness, same_lattice)
from .enumeration import EnumConfig, Levels, enumerate_svp, linear_profile, radius_default
from .lll import lll_reduce
from .reduce import auto_reduce, obtuse_reduce
from .signgraph import sign_flip_reduce

STEPS = ("auto", "signflip", "obtuse", "lll")


def parse_method(text: str) -> list[str]:
    steps = [s.strip() for s in text.split(",") if s.strip()]
    if not steps or any(s not in STEPS for s in steps):
        raise ValueError(f"method must be a comma list of {', '.join(STEPS)}; got {text!r}")
    return steps


@dataclass
class EnumOptions:
    radius: float | None = None
    sign_restricted: str = "auto"
    profile: str = "none"
    threads: int | None = None
    node_budget: int | None = None


@dataclass
class RunReport:
    input: dict
    seed: int | None = None
    steps: list[dict] = field(default_factory=list)
    output: dict = field(default_factory=dict)
    enum: dict | None = None
    model: dict | None = None
    timings_ms: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "seed": self.seed,
            "steps": self.steps,
            "output": self.output,
            "enum": self.enum,
            "model": self.model,
            "timings_ms": self.timings_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def reduce_step(basis: LatticeBasis, step: str, *, delta: float | Fraction = Fraction(99, 100),
                allow_sublattice: bool = False) -> ReductionReport | None:
    """One pipeline step; ``None`` when ``auto`` finds the basis already obtuse."""
    if step == "lll":
        return lll_reduce(basis, delta)
    if step == "signflip":
        return sign_flip_reduce(basis)
    if step == "obtuse":
        return obtuse_reduce(basis, allow_sublattice=allow_sublattice)
    if is_obtuse(basis):
        return None
    return auto_reduce(basis, allow_sublattice=allow_sublattice)


def read_profile(path: str | Path, n: int) -> tuple[float, ...]:
    vals = [float(x) for x in Path(path).read_text().split()]
    if len(vals) != n:
        raise ValueError(f"profile file has {len(vals)} radii, basis has dimension {n}")
    return tuple(vals)


def run_pipeline(basis: LatticeBasis, steps: Sequence[str], *, enum: EnumOptions | None = None,
                 delta: float | Fraction = Fraction(99, 100), allow_sublattice: bool = False,
                 seed: int | None = None, source: dict | None = None) -> tuple[RunReport, LatticeBasis]:
    """Apply ``steps`` in order, verify the lattice is kept, then optionally enumerate.

    Before enumerating, a basis coming out of the clique-growing reduction
    is permuted into the order its vectors were fixed; that order keeps the
    Gram-Schmidt lengths of the input, while the stored order can make them
    astronomically uneven. Raises InvariantViolation if a step changes the
    lattice (unless sublattices are allowed).
    """
    report = RunReport(input=dict(source or {}, n=basis.n, m=basis.m,
                                  obtuseness=obtuseness(basis)), seed=seed)
    current = basis
    total = UnimodularTransform.identity(basis.n)
    order = None
    for i, step in enumerate(steps):
        t0 = time.perf_counter()
        rep = reduce_step(current, step, delta=delta, allow_sublattice=allow_sublattice)
        report.timings_ms[f"step{i}_{step}"] = (time.perf_counter() - t0) * 1e3
        if rep is None:
            continue
        if not allow_sublattice and not same_lattice(current, rep.output):
            raise InvariantViolation(f"step {step!r} changed the lattice")
        entry = dict(rep.summary(), requested=step)
        report.steps.append(entry)
        current = rep.output
        total = total.then(rep.transform)
        if rep.method == "obtuse":
            order = rep.order
        elif rep.method != "signflip":
            order = None  # sign flips keep positions, anything else invalidates them
    report.output = {
        "basis": current.tolist(),
        "is_obtuse": is_obtuse(current),
        "obtuseness": obtuseness(current),
        "max_coeff_bits": current.max_coeff_bits(),
        "transform_det": total.det,
    }
    if enum is not None:
        t0 = time.perf_counter()
        report.enum, report.model = _enumerate(current, enum, order)
        report.timings_ms["enum"] = (time.perf_counter() - t0) * 1e3
    return report, current


def _enumerate(basis: LatticeBasis, opts: EnumOptions, order) -> tuple[dict, dict]:
    search = LatticeBasis([basis[i] for i in order], check=False) if order else basis
    obtuse = is_obtuse(search)
    if opts.sign_restricted == "auto":
        restricted = obtuse
    elif opts.sign_restricted == "on":
        restricted = True
    elif opts.sign_restricted == "off":
        restricted = False
    else:
        raise ValueError("sign_restricted must be auto, on or off")
    R = opts.radius if opts.radius is not None else radius_default(search)
    if opts.profile == "none":
        profile = None
    elif opts.profile == "linear":
        profile = linear_profile(search.n, R)
    else:
        profile = read_profile(opts.profile, search.n)
    cfg = EnumConfig(R, restricted, profile, opts.node_budget)
    res, stats = enumerate_svp(search, config=cfg, threads=opts.threads)
    coeffs = None
    if res.coeffs is not None:
        coeffs = [0] * basis.n
        pos = order if order else range(basis.n)
        for k, i in enumerate(pos):
            coeffs[i] = res.coeffs[k]
    enum = dict(res.to_dict(), coeffs=coeffs, radius=R, sign_restricted=restricted,
                profile=list(profile) if profile else None,
                search_order=list(order) if order else None, stats=stats.to_dict())
    model = compare_model(stats, profile if profile else R, Levels(gram(search)).normsq)
    return enum, model
