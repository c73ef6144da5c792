"""
Parameter sweeps over the bound checkers.

A sweep is a grid of cells (q, n, k, set size, M or C) with a number of
trials per cell.  Each (cell, trial) gets its own generator, derived from the
master seed and the cell's parameters, so results do not depend on the order
or the number of threads the cells run on.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .ambient import DEFAULT_MAX_SIZE, AmbientSpace, PointSet, plane_subset, random_subset
from .errors import (BudgetExceeded, ConfigInvalid, FFRadialError, PreconditionViolated,
                     SizeTooLarge)
from .gf import DEFAULT_MAX_Q, factor_prime_power
from .grassmann import DEFAULT_ENUMERATION_BUDGET, sample_uniform_subspace
from .projections import QuotientMap
from .theorems import (BoundReport, TheoremId, check_expectation_identity, check_fullDim,
                       check_largeESC, check_lemma, check_markov_fraction,
                       check_radial_conjecture, check_weak_bound)

FAMILIES = ("random", "plane_subset", "plane_union", "full_plane")

_FAMILY_CODES = {name: i for i, name in enumerate(FAMILIES)}


def generate_set(space, family, size, k, rng):
    """Draw a point set from one of the instance families.

    ``k`` is the dimension of the underlying plane for the structured
    families; ``full_plane`` ignores ``size``.
    """
    if family == "random":
        return random_subset(space, size, rng)
    if not 0 <= k <= space.n:
        raise SizeTooLarge(f"plane dimension {k} outside [0, {space.n}]")
    gamma = sample_uniform_subspace(space, k, rng)
    translate = space.point(int(rng.integers(space.size)))
    if family == "plane_subset":
        return plane_subset(space, gamma, translate, size, rng)
    if family == "full_plane":
        return plane_subset(space, gamma, translate, space.q ** k, rng)
    if family == "plane_union":
        # whole parallel translates of gamma in random order, the last one partial
        if not 0 <= size <= space.size:
            raise SizeTooLarge(f"cannot draw {size} points from a space of {space.size}")
        qm = QuotientMap(gamma)
        order = rng.permutation(qm.target.size)
        E = PointSet(space)
        for w in order:
            remaining = size - len(E)
            if remaining <= 0:
                break
            coset = qm.fiber(qm.target.point(w)).indices()
            if len(coset) > remaining:
                coset = rng.choice(coset, remaining, replace=False)
            E.bits[coset] = True
            E._count += len(coset)
        return E
    raise ConfigInvalid(f"unknown family {family!r}")


@dataclass
class ExperimentConfig:
    theorem: TheoremId
    q: list
    n: list
    k: list = None                  # None: every k meaningful for the theorem
    size: list = None
    M: list = None
    C: list = None
    family: str = "random"
    trials: int = 1
    seed: int = 0
    max_space_size: int = DEFAULT_MAX_SIZE
    grassmann_budget: int = DEFAULT_ENUMERATION_BUDGET
    time_limit: float = None
    jobs: int = 1

    def validate(self):
        self.theorem = TheoremId(self.theorem)
        if not self.q or not self.n:
            raise ConfigInvalid("q and n ranges must be nonempty")
        for q in self.q:
            try:
                factor_prime_power(q)
            except FFRadialError as exc:
                raise ConfigInvalid(str(exc)) from None
            if q > DEFAULT_MAX_Q:
                raise ConfigInvalid(f"q={q} exceeds the supported maximum {DEFAULT_MAX_Q}")
            for n in self.n:
                if n < 1:
                    raise ConfigInvalid("n must be at least 1")
                if q ** n > self.max_space_size:
                    raise ConfigInvalid(f"q^n = {q ** n} exceeds the memory budget")
        if self.family not in FAMILIES:
            raise ConfigInvalid(f"family must be one of {FAMILIES}")
        if self.trials < 0:
            raise ConfigInvalid("trials must be non-negative")
        for name in ("k", "size", "M", "C"):
            value = getattr(self, name)
            if value is not None and len(value) == 0:
                raise ConfigInvalid(f"{name} range is empty")
        t = self.theorem
        if t in (TheoremId.LargeESC, TheoremId.FullDimLargeESC) and not self.M:
            raise ConfigInvalid(f"{t.value} needs an M range")
        if t is TheoremId.WeakProjBound and not self.C:
            raise ConfigInvalid("WeakProjBound needs a C range")
        if t not in (TheoremId.ExpectationIdentity, TheoremId.MarkovFraction) \
                and self.family != "full_plane" and not self.size:
            raise ConfigInvalid(f"{t.value} needs a set size range")
        return self


@dataclass(frozen=True)
class Cell:
    q: int
    n: int
    k: int
    size: int
    param: object = None

    def key(self):
        p = Fraction(self.param) if self.param is not None else Fraction(0)
        return (self.q, self.n, self.k, self.size if self.size is not None else 0,
                p.numerator, p.denominator)


def _k_values(config, n):
    if config.k is not None:
        return [k for k in config.k if 0 <= k <= n]
    if config.theorem is TheoremId.LargeESC:
        return [n - 1]
    if config.theorem is TheoremId.RadialConjecture:
        return list(range(1, n))
    return list(range(n))


def cells(config):
    """The grid in deterministic order."""
    t = config.theorem
    if t in (TheoremId.LargeESC, TheoremId.FullDimLargeESC):
        params = config.M
    elif t is TheoremId.WeakProjBound:
        params = [Fraction(c) for c in config.C]
    else:
        params = [None]
    out = []
    for q, n in product(config.q, config.n):
        for k in _k_values(config, n):
            for size in (config.size or [None]):
                for param in params:
                    out.append(Cell(q, n, k, size, param))
    return out


def cell_rng(seed, cell, trial, family="random"):
    key = cell.key() + (_FAMILY_CODES.get(family, 0), trial)
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def _run_one(config, cell, trial, deadline):
    t = config.theorem
    common = dict(q=cell.q, n=cell.n, k=cell.k, set_size=cell.size, seed=config.seed,
                  trial=trial)
    if t in (TheoremId.LargeESC, TheoremId.FullDimLargeESC):
        common["M"] = cell.param
    if t is TheoremId.WeakProjBound:
        common["C"] = cell.param
    if deadline is not None and time.monotonic() > deadline:
        return BoundReport(t, preconditions_met=False, note="skipped: wall-clock budget",
                           **common)
    rng = cell_rng(config.seed, cell, trial, config.family)
    try:
        space = AmbientSpace(cell.q, cell.n, max_size=config.max_space_size)
        size = cell.size if cell.size is not None else 0
        if t in (TheoremId.ExpectationIdentity, TheoremId.MarkovFraction) and cell.size is None:
            size = int(rng.integers(space.size + 1))
        E = generate_set(space, config.family, size, cell.k, rng)
        if t is TheoremId.LargeESC:
            report = check_largeESC(E, cell.param)
        elif t is TheoremId.FullDimLargeESC:
            report = check_fullDim(E, cell.param, cell.k)
        elif t is TheoremId.RadialConjecture:
            report = check_radial_conjecture(E, cell.k)
        elif t is TheoremId.WeakProjBound:
            report = check_weak_bound(E, cell.param)
        elif t is TheoremId.Lemma31:
            B = generate_set(space, config.family, size, cell.k, rng)
            report = check_lemma(E, B, cell.k, rng)
        elif t is TheoremId.ExpectationIdentity:
            report = check_expectation_identity(E, cell.k, config.grassmann_budget)
        else:
            report = check_markov_fraction(E, cell.k, config.grassmann_budget)
    except (SizeTooLarge, BudgetExceeded, PreconditionViolated) as exc:
        return BoundReport(t, preconditions_met=False,
                           note=f"skipped: {type(exc).__name__}: {exc}", **common)
    except (FFRadialError, AssertionError) as exc:
        return BoundReport(t, preconditions_met=True,
                           error=f"{type(exc).__name__}: {exc}", **common)
    report.k = cell.k if report.k is None else report.k
    report.seed, report.trial = config.seed, trial
    report.M = report.M if report.M is not None else common.get("M")
    report.C = report.C if report.C is not None else common.get("C")
    return report


def run_experiment(config):
    """Yield one BoundReport per (cell, trial), in grid order."""
    config.validate()
    tasks = [(c, t) for c in cells(config) for t in range(config.trials)]
    deadline = None if config.time_limit is None else time.monotonic() + config.time_limit
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            yield from pool.map(lambda ct: _run_one(config, ct[0], ct[1], deadline), tasks)
    else:
        for c, t in tasks:
            yield _run_one(config, c, t, deadline)


@dataclass
class Summary:
    theorem: str
    reports: int = 0
    checked: int = 0
    violations: int = 0
    skipped: int = 0
    errors: int = 0
    error_messages: list = field(default_factory=list)

    def add(self, report):
        self.reports += 1
        if report.error is not None:
            self.errors += 1
            self.error_messages.append(report.error)
        elif not report.preconditions_met:
            self.skipped += 1
        else:
            self.checked += 1
            self.violations += report.holds is False

    @property
    def ok(self):
        return self.violations == 0 and self.errors == 0

    def to_dict(self):
        return {"summary": True, "theorem_id": self.theorem, "reports": self.reports,
                "checked": self.checked, "violations": self.violations,
                "skipped": self.skipped, "errors": self.errors}


def summarize(reports, theorem):
    s = Summary(TheoremId(theorem).value)
    for r in reports:
        s.add(r)
    return s

