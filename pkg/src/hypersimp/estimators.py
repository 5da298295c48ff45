"""Estimator-style wrappers so the pipeline composes with the ML ecosystem.

Both classes follow the scikit-learn contract: constructor arguments are
stored verbatim (so ``get_params``/``set_params``/``clone`` work), ``fit``
returns ``self`` and computed results land in trailing-underscore
attributes.
"""
from __future__ import annotations

from typing import Optional

from sklearn.base import BaseEstimator, TransformerMixin

from .decompose import topological_decomposition
from .forbidden import block_forbidden
from .model import Hypergraph, build_bipartite, check_hypergraph
from .simplify import OpLog, PriorityParams, simplify


class TopologicalDecomposer(BaseEstimator):
    """Analyze a hypergraph into blocks, bridges and branches.

    After ``fit``: ``decomposition_`` holds the full result, ``blocks_`` and
    ``trees_`` its parts, ``betti_`` the global (components, cycles) pair and
    ``forbidden_records_`` the detected forbidden sub-hypergraphs per block.
    """

    def __init__(self, detect_forbidden: bool = True):
        self.detect_forbidden = detect_forbidden

    def fit(self, X: Hypergraph, y=None):
        h = check_hypergraph(X)
        d = topological_decomposition(build_bipartite(h))
        self.decomposition_ = d
        self.blocks_ = d.blocks
        self.trees_ = d.trees
        self.betti_ = d.betti()
        if self.detect_forbidden:
            self.forbidden_records_ = {
                block.id: block_forbidden(block)[1] for block in d.blocks
            }
        return self


class HypergraphSimplifier(BaseEstimator, TransformerMixin):
    """Transform a hypergraph into a structurally simplified one.

    ``transform`` runs the simplification and stores the operation log of
    the most recent call in ``op_log_`` (and its length in ``n_ops_``).
    """

    def __init__(
        self,
        alpha: float = 0.0,
        beta: float = 0.9,
        gamma: float = 0.4,
        delta: float = 1.0,
        eta_threshold: Optional[float] = None,
        prune_threshold: Optional[float] = None,
        op_budget: Optional[int] = None,
        target: str = "planar",
        seed: int = 42,
    ):
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma
        self.delta = delta
        self.eta_threshold = eta_threshold
        self.prune_threshold = prune_threshold
        self.op_budget = op_budget
        self.target = target
        self.seed = seed

    def _params(self) -> PriorityParams:
        return PriorityParams(
            alpha=self.alpha,
            beta=self.beta,
            gamma=self.gamma,
            delta=self.delta,
            eta_threshold=self.eta_threshold,
            prune_threshold=self.prune_threshold,
            op_budget=self.op_budget,
            target=self.target,
            seed=self.seed,
        )

    def fit(self, X: Hypergraph, y=None):
        check_hypergraph(X)
        self._params()  # validate the parameter combination early
        return self

    def transform(self, X: Hypergraph) -> Hypergraph:
        h = check_hypergraph(X)
        simplified, log = simplify(h, self._params())
        self.op_log_: OpLog = log
        self.n_ops_: int = len(log.records)
        return simplified
