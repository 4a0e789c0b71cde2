"""
Enumeration module for Adjust
Brute-force listing of adjustment sets, used as a test oracle
"""

import logging
from enum import Enum
from itertools import combinations
from typing import List, Optional

from tqdm import tqdm

from src.adjustment.criteria import AdjustmentChecker
from src.adjustment.query import Query
from src.config import Config
from src.errors import TooLarge
from src.graphs.dag import Dag, VertexSet

logger = logging.getLogger(__name__)


class EnumerationMode(Enum):
    ALL = "All"
    MINIMAL = "Minimal"
    MINIMUM = "Minimum"


def enumerate_adjustment_sets(g: Dag, q: Query, mode: EnumerationMode = EnumerationMode.ALL,
                              cap: Optional[int] = None, progress: bool = False) -> List[VertexSet]:
    """
    Every valid set between L and N, filtered by mode

    Args:
        g: the causal DAG
        q: the query
        mode: All, Minimal (no valid proper subset) or Minimum (smallest size)
        cap: maximum |N \\ {A,Y}| (defaults to Config.ENUMERATION_CAP)
        progress: show a tqdm bar over candidates

    Returns:
        Sets sorted by size, then lexicographically by id
    """
    cap = Config.ENUMERATION_CAP if cap is None else cap
    checker = AdjustmentChecker(g, q)
    pool = [v for v in q.n if v not in (q.a, q.y)]
    if len(pool) > cap:
        raise TooLarge(f"{len(pool)} candidate vertices exceed the enumeration cap of {cap}")

    required = set(q.l)
    optional = [v for v in pool if v not in required]
    total = 2 ** len(optional)
    logger.info(f"🔄 Enumerating {total} candidate sets for {g.labels[q.a]} -> {g.labels[q.y]}")

    valid = []
    with tqdm(total=total, desc="Enumerating", disable=not progress,
              bar_format='{l_bar}{bar}| {n_fmt}/{total_fmt} [{elapsed}<{remaining}]') as pbar:
        for size in range(len(optional) + 1):
            for extra in combinations(optional, size):
                z = tuple(sorted(required | set(extra)))
                if checker.certificate(z).valid:
                    valid.append(z)
                pbar.update(1)

    if mode is EnumerationMode.MINIMAL:
        members = [set(z) for z in valid]
        valid = [z for z, s in zip(valid, members) if not any(other < s for other in members)]
    elif mode is EnumerationMode.MINIMUM and valid:
        smallest = min(len(z) for z in valid)
        valid = [z for z in valid if len(z) == smallest]

    valid.sort(key=lambda z: (len(z), z))
    logger.info(f"📊 {len(valid)} {mode.value.lower()} adjustment sets")
    return valid
