"""Deletion-contraction for the integral chromatic function.

chi(g) = chi(g minus e) - chi(g contract e) for every link e. Components are
multiplied, a linkless vertex of weight h contributes (n-h)^+, a zero loop
kills everything, and two-vertex components use the closed form of
``multiple_edge_chromatic``.
"""
import logging
import random
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, NamedTuple, Optional, Tuple

from core.gaingraph import (
    GainGraph,
    canonical_form,
    components,
    contract_edge,
    delete_edge,
    simplify,
    translate_weights,
)
from core.pluspoly import (
    ONE,
    ZERO,
    PluspartExpression,
    evaluate,
    functions_equal,
    translate,
)
from utils.config import CFG
from utils.errors import InvalidGraphError

LinkPolicy = Callable[[GainGraph], int]


def smallest_link(g: GainGraph) -> int:
    """The link with the smallest (u, v, |gain|, gain)."""
    return min(g.links(), key=lambda i: (g.edges[i].u, g.edges[i].v, abs(g.edges[i].gain), g.edges[i].gain))


def random_link_policy(rng: random.Random) -> LinkPolicy:
    def choose(g: GainGraph) -> int:
        return rng.choice(g.links())

    return choose


def multiple_edge_chromatic(weights: Tuple[int, int], gains: Iterable[int]) -> PluspartExpression:
    """Two vertices joined by edges of pairwise distinct gains, all read v1 -> v2."""
    gains = list(gains)
    if len(set(gains)) != len(gains):
        raise ValueError(f"gains must be pairwise distinct, got {sorted(gains)}")
    h1, h2 = weights
    terms = [(1, (h1, h2))]
    for mu in gains:
        if mu >= 0:
            terms.append((-1, (max(h1 + mu, h2),)))
        else:
            terms.append((-1, (max(h1, h2 - mu),)))
    return PluspartExpression.from_terms(terms)


class ChromaticEngine:
    """Memoized deletion-contraction over canonical forms of connected graphs."""

    def __init__(
        self,
        policy: Optional[LinkPolicy] = None,
        memoize: bool = True,
        two_vertex_shortcut: bool = True,
        parallel: bool = False,
        workers: int = CFG.parallel_workers,
        depth: int = CFG.parallel_depth,
    ):
        self.policy = policy or smallest_link
        self.memoize = memoize
        self.two_vertex_shortcut = two_vertex_shortcut
        self.parallel = parallel
        self.workers = workers
        self.depth = depth

        # shared by worker threads; a racing write stores the same value
        self._cache = {}
        self._stats_lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    @property
    def cache_size(self) -> int:
        return len(self._cache)

    def compute(self, g: GainGraph) -> PluspartExpression:
        if self.parallel:
            result = self._compute_parallel(g)
        else:
            result = self._solve(g)
        logging.info(
            f"chromatic function of {g.vertex_count} vertices / {g.edge_count} edges: "
            f"{len(result.terms)} terms, cache {self.hits} hits, {self.misses} misses"
        )
        return result

    def _count(self, hit: bool) -> None:
        with self._stats_lock:
            if hit:
                self.hits += 1
            else:
                self.misses += 1

    def _solve(self, g: GainGraph) -> PluspartExpression:
        g, zero_loop = simplify(g)
        if zero_loop:
            return ZERO
        if g.vertex_count == 0:
            return ONE
        result = ONE
        for part in components(g):
            result = result * self._solve_connected(part)
            if result.is_zero():
                break
        return result

    def _solve_connected(self, g: GainGraph) -> PluspartExpression:
        low = min(g.weights)
        if low != 0:
            return translate(self._solve_connected(translate_weights(g, -low)), low)
        if g.vertex_count == 1:
            return PluspartExpression.from_terms([(1, (0,))])

        key, canon = canonical_form(g)
        if self.memoize:
            cached = self._cache.get(key)
            if cached is not None:
                self._count(hit=True)
                return cached
            self._count(hit=False)

        if canon.vertex_count == 2 and self.two_vertex_shortcut:
            result = multiple_edge_chromatic(canon.weights, [e.gain for e in canon.edges])
        else:
            index = self.policy(canon)
            logging.debug(f"split on {canon.edges[index]} of {canon}")
            result = self._solve(delete_edge(canon, index)) - self._solve(contract_edge(canon, index))

        if self.memoize:
            self._cache[key] = result
        return result

    def frontier(self, g: GainGraph, depth: int) -> List[Tuple[int, GainGraph]]:
        """Signed subgraphs after ``depth`` rounds of deletion-contraction."""
        leaves = [(1, g)]
        for _ in range(depth):
            expanded = []
            for sign, h in leaves:
                h, zero_loop = simplify(h)
                if zero_loop:
                    continue
                if not h.links():
                    expanded.append((sign, h))
                    continue
                _, canon = canonical_form(h)
                index = self.policy(canon)
                expanded.append((sign, delete_edge(canon, index)))
                expanded.append((-sign, contract_edge(canon, index)))
            leaves = expanded
        return leaves

    def _compute_parallel(self, g: GainGraph) -> PluspartExpression:
        leaves = self.frontier(g, self.depth)
        logging.info(f"solving {len(leaves)} subgraphs on {self.workers} threads")
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            parts = list(pool.map(self._solve, [h for _, h in leaves]))
        result = ZERO
        for (sign, _), part in zip(leaves, parts):
            result = result + part if sign > 0 else result - part
        return result


def integral_chromatic(g: GainGraph, engine: Optional[ChromaticEngine] = None) -> PluspartExpression:
    return (engine or ChromaticEngine()).compute(g)


def verify_dc_identity(g: GainGraph, index: int, n_max: int, engine: Optional[ChromaticEngine] = None) -> bool:
    if not 0 <= index < g.edge_count or g.edges[index].is_loop:
        raise InvalidGraphError(f"edge {index} is not a link of {g}")
    engine = engine or ChromaticEngine()
    whole = engine.compute(g)
    deleted = engine.compute(delete_edge(g, index))
    contracted = engine.compute(contract_edge(g, index))
    return all(
        evaluate(whole, n) == evaluate(deleted, n) - evaluate(contracted, n)
        for n in range(n_max + 1)
    )


class OrderComparison(NamedTuple):
    functions_equal: bool
    term_differences: int


def compare_elimination_orders(g: GainGraph, trials: int, seed: int = 0) -> OrderComparison:
    """Recompute chi(g) under random link orders and compare with the default order.

    Random runs use neither memo nor the two-vertex shortcut, so every trial
    follows its own elimination order to the leaves.
    """
    reference = integral_chromatic(g)
    rng = random.Random(seed)
    all_equal = True
    term_differences = 0
    for trial in range(trials):
        engine = ChromaticEngine(policy=random_link_policy(rng), memoize=False, two_vertex_shortcut=False)
        other = engine.compute(g)
        if not functions_equal(reference, other):
            logging.warning(f"trial {trial}: elimination order changed the function: {other}")
            all_equal = False
        elif other != reference:
            term_differences += 1
            logging.debug(f"trial {trial}: same function, different terms: {other} vs {reference}")
    return OrderComparison(all_equal, term_differences)
