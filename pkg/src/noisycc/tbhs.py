"""Threshold bandit that splits pairs into high- and low-similarity sets.

Every arm keeps an anytime confidence interval around its empirical mean.
Each round the arm with the highest lower confidence bound and the arm with
the lowest upper confidence bound (chosen from the same pre-pull snapshot)
are pulled once each; an arm is claimed "good" once its LCB reaches
``0.5 - epsilon`` and "bad" once its UCB drops to ``0.5 + epsilon``.  The
slack ``epsilon`` lets arms near the 0.5 threshold be classified either way,
which is what keeps the total number of pulls finite even when some
similarity sits exactly on the threshold.

With probability at least ``1 - delta`` the output satisfies: every good arm
has ``s(e) >= 0.5 - epsilon``, every bad arm has ``s(e) <= 0.5 + epsilon``,
every arm with ``s(e) > 0.5 + epsilon`` is good, and every arm with
``s(e) < 0.5 - epsilon`` is bad.  The good/bad sets always partition the
input arms, deterministically.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .errors import NoSamplesError, ParameterError
from .instance import Instance
from .oracle import Oracle


def radius(m: int, pulls: int, delta: float, scale: float = 1.0) -> float:
    """Anytime confidence radius after ``pulls`` samples, union-bounded over
    ``m`` arms and all sample counts: sqrt(ln(4*m*pulls^2/delta) / (2*pulls)).

    ``scale`` widens the interval for sub-Gaussian (non-Bernoulli) rewards.
    """
    if pulls == 0:
        raise NoSamplesError("radius undefined before the first pull")
    return scale * math.sqrt(math.log(4.0 * m * pulls * pulls / delta) / (2.0 * pulls))


@dataclass(frozen=True)
class ArmState:
    """Snapshot of one arm: pull count, empirical mean, confidence radius."""

    e: int
    pulls: int
    mean: float
    rad: float

    @property
    def lcb(self) -> float:
        return self.mean - self.rad

    @property
    def ucb(self) -> float:
        return self.mean + self.rad


@dataclass(frozen=True)
class TbhsConfig:
    epsilon: float
    delta: float
    radius_scale: float = 1.0

    def __post_init__(self) -> None:
        if not (0.0 < self.epsilon < 0.5):
            raise ParameterError(f"epsilon must lie in (0, 0.5), got {self.epsilon}")
        if not (0.0 < self.delta < 1.0):
            raise ParameterError(f"delta must lie in (0, 1), got {self.delta}")
        if not self.radius_scale > 0.0:
            raise ParameterError("radius_scale must be positive")


@dataclass(frozen=True)
class TbhsOutput:
    good: frozenset[int]
    bad: frozenset[int]
    pulls_used: int
    rounds: int


def run_tbhs(
    oracle: Oracle,
    arms,
    config: TbhsConfig,
    max_pulls: int | None = None,
) -> TbhsOutput:
    """Classify every arm as good or bad, pulling through ``oracle``.

    ``arms`` is any iterable of pair indices.  Ties in the LCB/UCB selection
    break toward the smallest pair index.  ``max_pulls`` is a safety cap that
    raises RuntimeError if exceeded; budget errors from the oracle propagate
    to the caller untouched.
    """
    arm_list = sorted(set(arms))
    m = len(arm_list)
    if m == 0:
        return TbhsOutput(frozenset(), frozenset(), 0, 0)

    eps = config.epsilon
    delta = config.delta
    scale = config.radius_scale

    states: dict[int, ArmState] = {}
    version: dict[int, int] = {}
    lcb_heap: list[tuple[float, int, int]] = []
    ucb_heap: list[tuple[float, int, int]] = []
    active = set(arm_list)

    def observe(e: int, reward: float) -> None:
        prev = states.get(e)
        pulls = 1 if prev is None else prev.pulls + 1
        mean = reward if prev is None else prev.mean + (reward - prev.mean) / pulls
        states[e] = ArmState(e, pulls, mean, radius(m, pulls, delta, scale))

    def publish(e: int) -> None:
        version[e] = version.get(e, 0) + 1
        st = states[e]
        heapq.heappush(lcb_heap, (-st.lcb, e, version[e]))
        heapq.heappush(ucb_heap, (st.ucb, e, version[e]))

    def peek(heap: list[tuple[float, int, int]]) -> int:
        while heap:
            _, e, ver = heap[0]
            if e in active and version[e] == ver:
                return e
            heapq.heappop(heap)
        raise AssertionError("selection heap drained while arms remain active")

    pulls_used = 0
    for e in arm_list:
        observe(e, oracle.pull(e))
        publish(e)
        pulls_used += 1

    good: set[int] = set()
    bad: set[int] = set()
    rounds = 0
    while active:
        e_g = peek(lcb_heap)
        e_b = peek(ucb_heap)
        observe(e_g, oracle.pull(e_g))
        observe(e_b, oracle.pull(e_b))
        publish(e_g)
        if e_b != e_g:
            publish(e_b)
        pulls_used += 2
        rounds += 1
        if states[e_g].lcb >= 0.5 - eps:
            good.add(e_g)
            active.remove(e_g)
        if e_b in active and states[e_b].ucb <= 0.5 + eps:
            bad.add(e_b)
            active.remove(e_b)
        if max_pulls is not None and pulls_used > max_pulls:
            raise RuntimeError(f"exceeded pull cap {max_pulls} with {len(active)} arms open")

    return TbhsOutput(frozenset(good), frozenset(bad), pulls_used, rounds)


def containment_check(output: TbhsOutput, instance: Instance, epsilon: float) -> bool:
    """True iff every pair clearly above the threshold band landed in good
    and every pair clearly below landed in bad."""
    for e in range(instance.m):
        s = instance.sims[e]
        if s > 0.5 + epsilon and e not in output.good:
            return False
        if s < 0.5 - epsilon and e not in output.bad:
            return False
    return True
