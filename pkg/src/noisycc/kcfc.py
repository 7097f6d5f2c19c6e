"""Fixed-confidence clustering.

``run_kcfc`` classifies all pairs with the threshold bandit at a shrunken
slack ``epsilon / (12 m)``, then pivot-clusters using membership in the good
set as a binary similarity.  With probability at least ``1 - delta`` the
expected cost over pivot randomness is at most ``5 * OPT + epsilon``.

``run_kcfc_sequential`` interleaves the two stages: each phase picks a pivot
first and runs the threshold bandit only on the pivot's incident pairs (at
slack ``epsilon / (12 |I|)`` and confidence ``delta / n``), so pairs inside
early clusters are never queried at all.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .instance import num_pairs, pair_index
from .offline import kwikcluster, pair_set_source
from .oracle import Oracle
from .tbhs import TbhsConfig, run_tbhs


@dataclass
class FcReport:
    clustering: np.ndarray
    queries: int
    epsilon: float
    delta: float
    epsilon_prime: float | None
    good_set_size: int | None
    # Learned high-similarity pair set, kept so reporting code can replay the
    # pivot stage without re-querying.  None when there is no single such set.
    good_pairs: frozenset[int] | None = None


def _validate(oracle: Oracle, n: int, epsilon: float, delta: float) -> None:
    if n != oracle.instance.n:
        raise ParameterError(f"n={n} does not match the oracle's instance (n={oracle.instance.n})")
    if not epsilon > 0:
        raise ParameterError(f"epsilon must be positive, got {epsilon}")
    if not (0.0 < delta < 1.0):
        raise ParameterError(f"delta must lie in (0, 1), got {delta}")


def run_kcfc(
    oracle: Oracle,
    n: int,
    epsilon: float,
    delta: float,
    rng: np.random.Generator | None = None,
    radius_scale: float = 1.0,
) -> FcReport:
    """Classify every pair once, then pivot-cluster on the good set."""
    _validate(oracle, n, epsilon, delta)
    if n == 1:
        return FcReport(np.zeros(1, dtype=np.int64), 0, epsilon, delta, None, 0, frozenset())
    m = num_pairs(n)
    eps_prime = epsilon / (12.0 * m)
    if not eps_prime < 0.5:
        raise ParameterError(f"epsilon={epsilon} too large: epsilon/(12m) must be < 0.5")
    out = run_tbhs(oracle, range(m), TbhsConfig(eps_prime, delta, radius_scale))
    if rng is None:
        rng = np.random.default_rng()
    labels = kwikcluster(pair_set_source(out.good, n), n, rng)
    return FcReport(labels, out.pulls_used, epsilon, delta, eps_prime, len(out.good), out.good)


def run_kcfc_sequential(
    oracle: Oracle,
    n: int,
    epsilon: float,
    delta: float,
    rng: np.random.Generator | None = None,
    radius_scale: float = 1.0,
) -> FcReport:
    """Per-phase variant: threshold-bandit only the pivot's incident pairs."""
    _validate(oracle, n, epsilon, delta)
    if n == 1:
        return FcReport(np.zeros(1, dtype=np.int64), 0, epsilon, delta, None, 0, None)
    if rng is None:
        rng = np.random.default_rng()
    labels = np.full(n, -1, dtype=np.int64)
    remaining = list(range(n))
    cid = 0
    queries = 0
    good_total = 0
    while remaining:
        p = remaining[int(rng.integers(len(remaining)))]
        others = [u for u in remaining if u != p]
        members = [p]
        if others:
            arms = [pair_index(min(p, u), max(p, u), n) for u in others]
            eps_r = epsilon / (12.0 * len(arms))
            if not eps_r < 0.5:
                raise ParameterError(
                    f"epsilon={epsilon} too large for a phase with {len(arms)} incident pairs"
                )
            out = run_tbhs(oracle, arms, TbhsConfig(eps_r, delta / n, radius_scale))
            queries += out.pulls_used
            good_total += len(out.good)
            members += [u for u in others if pair_index(min(p, u), max(p, u), n) in out.good]
        for u in members:
            labels[u] = cid
        remaining = [u for u in remaining if labels[u] == -1]
        cid += 1
    return FcReport(labels, queries, epsilon, delta, None, good_total, None)
