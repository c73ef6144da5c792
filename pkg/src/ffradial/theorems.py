"""
Executable forms of the radial projection bounds over F_q^n.

Every comparison is exact: thresholds and bounds are ``Fraction`` values and
counts are Python ints.  A checker never raises on a failed precondition; it
returns a :class:`BoundReport` with ``preconditions_met=False`` and
``holds=None`` so that parameter sweeps can record the skip.

Threshold conventions (each checker encodes its own):

====================  ==========================  ============
checker               exceptional centers          inequality
====================  ==========================  ============
check_largeESC        |pi^y(E)| <= M               lhs <  rhs
check_fullDim         |pi^y(E)| <= M               lhs <  rhs
check_radial_conj.    |pi^y(E)| <  |E|/50          lhs <= rhs
check_weak_bound      |pi^y(E)| <  |E|/C           lhs <  rhs
====================  ==========================  ============
"""

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .ambient import PointSet
from .errors import (ContainmentFailure, DimensionMismatch, InvalidRange,
                     PreconditionViolated, TrialsExhausted)
from .grassmann import (DEFAULT_ENUMERATION_BUDGET, enumerate_grassmannian,
                        sample_uniform_subspace)
from .projections import QuotientMap, num_lines_through_point, radial_sizes

DEFAULT_MAX_TRIALS = 64


class TheoremId(str, enum.Enum):
    LargeESC = "LargeESC"
    FullDimLargeESC = "FullDimLargeESC"
    RadialConjecture = "RadialConjecture"
    WeakProjBound = "WeakProjBound"
    Lemma31 = "Lemma31"
    ExpectationIdentity = "ExpectationIdentity"
    MarkovFraction = "MarkovFraction"


def format_rational(x):
    """Exact rational as ``"a/b"``; ``None`` passes through."""
    if x is None:
        return None
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text):
    return Fraction(text)


@dataclass
class BoundReport:
    theorem_id: TheoremId
    preconditions_met: bool
    lhs: object = None
    rhs: object = None
    holds: object = None
    q: int = None
    n: int = None
    k: int = None
    set_size: int = None
    aux_size: int = None
    M: object = None
    C: object = None
    seed: object = None
    trial: int = None
    note: str = ""
    error: str = None

    @property
    def violated(self):
        return self.preconditions_met and self.holds is False

    @property
    def skipped(self):
        return not self.preconditions_met and self.error is None

    def to_dict(self):
        return {
            "theorem_id": TheoremId(self.theorem_id).value,
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "set_size": self.set_size,
            "aux_size": self.aux_size,
            "M": format_rational(self.M),
            "C": format_rational(self.C),
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "preconditions_met": self.preconditions_met,
            "holds": self.holds,
            "seed": self.seed,
            "trial": self.trial,
            "note": self.note,
            "error": self.error,
        }


# -- exceptional sets ------------------------------------------------------

def _below(sizes, threshold, strict):
    t = Fraction(threshold)
    sizes = np.asarray(sizes)
    if t.denominator > 1 << 30 or abs(t.numerator) > 1 << 62:
        sizes = sizes.astype(object)
    scaled = sizes * t.denominator
    if strict:
        return scaled < t.numerator
    return scaled <= t.numerator


def exceptional_set(E, threshold, strict=False, sizes=None, jobs=1):
    """Centers y of the whole space with |pi^y(E)| <= threshold (< if strict).

    ``threshold`` may be any rational.  ``sizes`` lets callers reuse a
    previous :func:`radial_sizes` sweep of E.
    """
    if len(E) == 0:
        raise PreconditionViolated("exceptional sets are defined for nonempty E")
    if sizes is None:
        sizes = radial_sizes(E, jobs=jobs)
    return PointSet(E.space, _below(sizes, threshold, strict))


def _report(tid, E, **kw):
    return BoundReport(tid, q=E.space.q, n=E.space.n, set_size=len(E), **kw)


def check_weak_bound(E, C, sizes=None, jobs=1):
    """#{y : |pi^y(E)| < |E|/C} < q|E|/(C-1), for 1 < C < |E|."""
    C = Fraction(C)
    m, q = len(E), E.space.q
    if not 1 < C < m:
        return _report(TheoremId.WeakProjBound, E, preconditions_met=False, C=C,
                       note="requires 1 < C < |E|")
    lhs = len(exceptional_set(E, Fraction(m) / C, strict=True, sizes=sizes, jobs=jobs))
    rhs = Fraction(q * m) / (C - 1)
    return _report(TheoremId.WeakProjBound, E, preconditions_met=True, C=C,
                   lhs=lhs, rhs=rhs, holds=lhs < rhs)


def check_largeESC(E, M, sizes=None, jobs=1):
    """#{y : |pi^y(E)| <= M} < 12 q^(n-1) M / |E|.

    Requires |E| >= 6 q^(n-1) and 1 <= M <= q^(n-1)/4.
    """
    m, q, n = len(E), E.space.q, E.space.n
    base = q ** (n - 1)
    ok = m >= 6 * base and 1 <= M and 4 * M <= base
    if not ok:
        return _report(TheoremId.LargeESC, E, preconditions_met=False, M=M, k=n - 1,
                       note="requires |E| >= 6q^(n-1) and 1 <= M <= q^(n-1)/4")
    lhs = len(exceptional_set(E, M, sizes=sizes, jobs=jobs))
    rhs = Fraction(12 * base * M, m)
    return _report(TheoremId.LargeESC, E, preconditions_met=True, M=M, k=n - 1,
                   lhs=lhs, rhs=rhs, holds=lhs < rhs)


def fulldim_preconditions(m, q, n, k, M):
    return 0 <= k <= n - 1 and 30 * q ** k <= m <= q ** (k + 1) and 1 <= M and 4 * M <= q ** k


def check_fullDim(E, M, k, sizes=None, jobs=1):
    """#{y : |pi^y(E)| <= M} < 300 q^k M / |E|.

    Requires 30 q^k <= |E| <= q^(k+1) and 1 <= M <= q^k/4.  The range for
    |E| is empty unless q >= 30.
    """
    m, q, n = len(E), E.space.q, E.space.n
    if not fulldim_preconditions(m, q, n, k, M):
        return _report(TheoremId.FullDimLargeESC, E, preconditions_met=False, M=M, k=k,
                       note="requires 30q^k <= |E| <= q^(k+1) and 1 <= M <= q^k/4")
    lhs = len(exceptional_set(E, M, sizes=sizes, jobs=jobs))
    rhs = Fraction(300 * q ** k * M, m)
    return _report(TheoremId.FullDimLargeESC, E, preconditions_met=True, M=M, k=k,
                   lhs=lhs, rhs=rhs, holds=lhs < rhs)


def check_radial_conjecture(E, k, sizes=None, jobs=1):
    """#{y : |pi^y(E)| < |E|/50} <= 10 q^k, for q^(k-1) < |E| <= q^k, 1 <= k <= n-1."""
    m, q, n = len(E), E.space.q, E.space.n
    if not (1 <= k <= n - 1 and q ** (k - 1) < m <= q ** k):
        return _report(TheoremId.RadialConjecture, E, preconditions_met=False, k=k,
                       note="requires q^(k-1) < |E| <= q^k and 1 <= k <= n-1")
    lhs = len(exceptional_set(E, Fraction(m, 50), strict=True, sizes=sizes, jobs=jobs))
    rhs = 10 * q ** k
    return _report(TheoremId.RadialConjecture, E, preconditions_met=True, k=k,
                   lhs=lhs, rhs=rhs, holds=lhs <= rhs)


# -- collisions under random quotients ----------------------------------------

def collision_expectation(n, k, q, m):
    """Mean collision count of an m-set over all (n-k-1)-dim quotients."""
    if not 0 <= k <= n - 1:
        raise InvalidRange(f"need 0 <= k <= n-1, got n={n}, k={k}")
    if not 0 <= m <= q ** n:
        raise InvalidRange(f"set size {m} outside [0, q^n]")
    return Fraction(q ** (n - k - 1) - 1, q ** n - 1) * comb(m, 2)


def markov_condition(qm, X):
    """collision_count(qm, X) <= 4 * collision_expectation, exactly."""
    space = qm.source
    bound = 4 * collision_expectation(space.n, qm.k, space.q, len(X))
    return qm.collision_count(X) <= bound


def _check_k(space, k):
    if not 0 <= k <= space.n - 1:
        raise InvalidRange(f"need 0 <= k <= n-1, got n={space.n}, k={k}")


def check_expectation_identity(X, k, budget=DEFAULT_ENUMERATION_BUDGET):
    """Average collision count over every (n-k-1)-subspace vs. the closed form."""
    space = X.space
    _check_k(space, k)
    total = count = 0
    for gamma in enumerate_grassmannian(space, space.n - k - 1, budget):
        total += QuotientMap(gamma).collision_count(X)
        count += 1
    lhs = Fraction(total, count)
    rhs = collision_expectation(space.n, k, space.q, len(X))
    return _report(TheoremId.ExpectationIdentity, X, preconditions_met=True, k=k,
                   lhs=lhs, rhs=rhs, holds=lhs == rhs)


def check_markov_fraction(X, k, budget=DEFAULT_ENUMERATION_BUDGET):
    """At least 3/4 of the (n-k-1)-subspaces satisfy the Markov condition."""
    space = X.space
    _check_k(space, k)
    good = count = 0
    for gamma in enumerate_grassmannian(space, space.n - k - 1, budget):
        good += markov_condition(QuotientMap(gamma), X)
        count += 1
    rhs = Fraction(3, 4) * count
    return _report(TheoremId.MarkovFraction, X, preconditions_met=True, k=k,
                   lhs=good, rhs=rhs, holds=good >= rhs)


def grassmann_profile(space, k, masks, budget=DEFAULT_ENUMERATION_BUDGET):
    """Batched collision statistics for many sets at once.

    ``masks`` is a boolean (sets x q^n) matrix.  Returns ``(totals, good,
    count)``: per set, the collision count summed over all (n-k-1)-subspaces
    and the number of subspaces meeting the Markov condition, plus the
    number of subspaces.  Comparisons are done in integers, so they are
    exact.
    """
    _check_k(space, k)
    masks = np.asarray(masks, dtype=bool)
    q, n = space.q, space.n
    sizes = masks.sum(axis=1).astype(np.int64)
    # collisions <= 4 (q^(n-k-1)-1)/(q^n-1) C(m,2), cleared of denominators
    bound = 4 * (q ** (n - k - 1) - 1) * (sizes * (sizes - 1) // 2)
    totals = np.zeros(len(masks), dtype=np.int64)
    good = np.zeros(len(masks), dtype=np.int64)
    count = 0
    for gamma in enumerate_grassmannian(space, n - k - 1, budget):
        c = QuotientMap(gamma).collision_counts_batch(masks)
        totals += c
        good += c * (q ** n - 1) <= bound
        count += 1
    return totals, good, count


def expectation_reports(space, k, masks, budget=DEFAULT_ENUMERATION_BUDGET):
    """check_expectation_identity and check_markov_fraction for many sets."""
    totals, good, count = grassmann_profile(space, k, masks, budget)
    sizes = np.asarray(masks, dtype=bool).sum(axis=1)
    out = []
    for total, g, m in zip(totals.tolist(), good.tolist(), sizes.tolist()):
        lhs = Fraction(total, count)
        rhs = collision_expectation(space.n, k, space.q, m)
        common = dict(q=space.q, n=space.n, k=k, set_size=m, preconditions_met=True)
        out.append((
            BoundReport(TheoremId.ExpectationIdentity, lhs=lhs, rhs=rhs, holds=lhs == rhs, **common),
            BoundReport(TheoremId.MarkovFraction, lhs=g, rhs=Fraction(3 * count, 4),
                        holds=4 * g >= 3 * count, **common),
        ))
    return out


# -- the sampling lemma -------------------------------------------------------

def find_good_subspace(A, B, k, rng, max_trials=DEFAULT_MAX_TRIALS):
    """Sample (n-k-1)-subspaces until the Markov condition holds for A and B.

    The accepted gamma is then checked directly: both projections keep at
    least a fifth of their set.  Returns ``(gamma, trials_used)``.
    """
    space = A.space
    if B.space != space:
        raise DimensionMismatch("A and B live in different spaces")
    if not 0 <= k <= space.n - 1:
        raise PreconditionViolated(f"need 0 <= k <= n-1, got n={space.n}, k={k}")
    cap = space.q ** (k + 1)
    if len(A) > cap or len(B) > cap:
        raise PreconditionViolated(f"|A|, |B| must be at most q^(k+1) = {cap}")
    for trial in range(1, max_trials + 1):
        gamma = sample_uniform_subspace(space, space.n - k - 1, rng)
        qm = QuotientMap(gamma)
        if markov_condition(qm, A) and markov_condition(qm, B):
            for X in (A, B):
                if 5 * len(qm.project_set(X)) < len(X):
                    raise AssertionError(
                        f"{gamma.serialize()} passed the Markov test but shrinks a set "
                        f"of {len(X)} below a fifth")
            return gamma, trial
    raise TrialsExhausted(f"no good subspace in {max_trials} trials")


def check_lemma(A, B, k, rng, max_trials=DEFAULT_MAX_TRIALS):
    """find_good_subspace wrapped as a report: lhs = trials used."""
    space = A.space
    cap = space.q ** (k + 1)
    common = dict(q=space.q, n=space.n, k=k, set_size=len(A), aux_size=len(B))
    if not (0 <= k <= space.n - 1 and len(A) < cap and len(B) < cap):
        return BoundReport(TheoremId.Lemma31, preconditions_met=False,
                           note="requires |A|, |B| < q^(k+1)", **common)
    gamma, trials = find_good_subspace(A, B, k, rng, max_trials)
    qm = QuotientMap(gamma)
    ok = all(5 * len(qm.project_set(X)) >= len(X) for X in (A, B))
    return BoundReport(TheoremId.Lemma31, preconditions_met=True, lhs=trials,
                       rhs=max_trials, holds=ok, note=gamma.serialize(), **common)


# -- the reduction ----------------------------------------------------------

@dataclass(frozen=True)
class FullDim:
    M: int
    k: int


@dataclass(frozen=True)
class Conjecture:
    k: int


@dataclass
class PipelineTrace:
    mode: str
    q: int
    n: int
    k: int
    threshold: Fraction
    set_size: int
    exceptional_size: int = 0
    gamma: str = ""
    trials: int = 0
    projected_set_size: int = 0
    projected_exceptional_size: int = 0
    image_exceptional_size: int = 0
    checks: dict = field(default_factory=dict)
    terminal: BoundReport = None
    bound: BoundReport = None

    @property
    def all_checks_pass(self):
        return all(self.checks.values())

    def to_dict(self):
        out = {k: v for k, v in self.__dict__.items() if k not in ("terminal", "bound")}
        out["threshold"] = format_rational(self.threshold)
        out["terminal"] = self.terminal.to_dict() if self.terminal else None
        out["bound"] = self.bound.to_dict() if self.bound else None
        return out


def reduction_pipeline(E, mode, rng, max_trials=DEFAULT_MAX_TRIALS,
                       check_preconditions=True, jobs=1):
    """Run the projection argument on a concrete set and record every step.

    1. T = exceptional centers of E (strictly below the mode's threshold).
    2. gamma = find_good_subspace(E, T, k).
    3. Project E and T to F_q^(k+1).
    4. Check that every projected exceptional center is still exceptional
       (non-strictly) for the projected set; raise ContainmentFailure if not.

    With ``check_preconditions=False`` only the sampling lemma's size
    requirements are enforced, which allows instrumented runs at small q
    where the full-dimensional bound has no admissible sets.
    """
    space = E.space
    q, n, m = space.q, space.n, len(E)
    k = mode.k
    if m == 0:
        raise PreconditionViolated("E must be nonempty")
    if isinstance(mode, FullDim):
        name, threshold = "FullDim", Fraction(mode.M)
        if check_preconditions and not fulldim_preconditions(m, q, n, k, mode.M):
            raise PreconditionViolated("requires 30q^k <= |E| <= q^(k+1), 1 <= M <= q^k/4")
    elif isinstance(mode, Conjecture):
        name, threshold = "Conjecture", Fraction(m, 50)
        if check_preconditions and not (1 <= k <= n - 1 and q ** (k - 1) < m <= q ** k):
            raise PreconditionViolated("requires q^(k-1) < |E| <= q^k, 1 <= k <= n-1")
    else:
        raise TypeError(f"unknown mode {mode!r}")
    if not 0 <= k <= n - 1:
        raise PreconditionViolated(f"need 0 <= k <= n-1, got {k}")

    trace = PipelineTrace(name, q, n, k, threshold, m)
    sizes = radial_sizes(E, jobs=jobs)
    T = exceptional_set(E, threshold, strict=True, sizes=sizes)
    trace.exceptional_size = len(T)

    gamma, trials = find_good_subspace(E, T, k, rng, max_trials)
    qm = QuotientMap(gamma)
    trace.gamma, trace.trials = gamma.serialize(), trials

    pE, pT = qm.project_set(E), qm.project_set(T)
    trace.projected_set_size, trace.projected_exceptional_size = len(pE), len(pT)
    trace.checks["E_keeps_fifth"] = 5 * len(pE) >= m
    trace.checks["T_keeps_fifth"] = 5 * len(pT) >= len(T)

    image_sizes = radial_sizes(pE, jobs=jobs)
    image_exceptional = exceptional_set(pE, threshold, strict=False, sizes=image_sizes)
    trace.image_exceptional_size = len(image_exceptional)
    if not pT <= image_exceptional:
        w = next(iter((pT.bits & ~image_exceptional.bits).nonzero()[0]))
        raise ContainmentFailure(
            f"projected center {pT.space.point(w)} sees {image_sizes[w]} directions, "
            f"more than the threshold {threshold}")
    trace.checks["containment"] = True

    t_idx = T.indices()
    trace.checks["line_collapse"] = bool(np.all(
        image_sizes[qm.apply_indices(t_idx)] <= sizes[t_idx]))

    if isinstance(mode, FullDim):
        trace.terminal = check_largeESC(pE, mode.M, sizes=image_sizes)
        trace.bound = check_fullDim(E, mode.M, k, sizes=sizes)
    else:
        # |E|/50 <= |pE|/10 because gamma keeps a fifth of E
        trace.checks["fraction_containment"] = bool(np.all(
            _below(image_sizes[pT.indices()], Fraction(len(pE), 10), strict=False)))
        if q ** (k - 1) < len(pE):
            trace.terminal = check_radial_conjecture(pE, k, sizes=image_sizes)
            trace.checks["projected_T_bound"] = len(pT) <= 10 * q ** k
        else:
            trace.checks["small_set_branch"] = 2 * len(T) <= q ** k
        trace.bound = check_radial_conjecture(E, k, sizes=sizes)
    return trace


# -- tightness --------------------------------------------------------------

@dataclass
class TightnessResult:
    q: int
    n: int
    k: int
    expected_size: int
    in_plane_sizes: tuple
    exceptional_count: int

    @property
    def holds(self):
        return (all(s == self.expected_size for s in self.in_plane_sizes)
                and self.exceptional_count >= self.q ** self.k)


def check_tightness(space, gamma, translate):
    """E = the full affine plane translate + gamma.

    Every center in the plane sees exactly (q^k - 1)/(q - 1) directions, so
    at that threshold the exceptional set has at least q^k points.
    """
    from .ambient import affine_plane_indices
    k = gamma.k
    E = PointSet.from_indices(space, affine_plane_indices(gamma, translate))
    sizes = radial_sizes(E)
    expected = num_lines_through_point(space.q, k) if k > 0 else 0
    return TightnessResult(space.q, space.n, k, expected,
                           tuple(sizes[E.indices()].tolist()),
                           len(exceptional_set(E, expected, sizes=sizes)))
