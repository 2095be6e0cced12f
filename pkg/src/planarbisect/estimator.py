"""Estimator-style front end and input validation."""

from __future__ import annotations

import json
import os
from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .framework import DEFAULT_KMAX, DEFAULT_STATE_LIMIT, solve
from .planar import EmbeddedGraph, PlanarError, from_instance


def check_graph(X):
    """Accept a graph, an instance dict, a JSON string or a path; return ``(graph, outer)``."""
    if isinstance(X, EmbeddedGraph):
        return X, None
    if isinstance(X, dict):
        return from_instance(X)
    if isinstance(X, (str, os.PathLike)):
        text = str(X)
        if os.path.exists(text):
            with open(text) as fh:
                return from_instance(json.load(fh))
        try:
            return from_instance(json.loads(text))
        except json.JSONDecodeError as exc:
            raise PlanarError("not an instance path or JSON text") from exc
    raise PlanarError("unsupported input type %s" % type(X).__name__)


def check_fraction(name, value, lo=None, hi=None, strict_lo=False) -> Fraction:
    try:
        v = Fraction(value)
    except (TypeError, ValueError) as exc:
        raise PlanarError("%s must be a rational number" % name) from exc
    if lo is not None and (v < lo or (strict_lo and v == lo)):
        raise PlanarError("%s out of range: %s" % (name, value))
    if hi is not None and v > hi:
        raise PlanarError("%s out of range: %s" % (name, value))
    return v


class PlanarBisection(BaseEstimator):
    """Approximate minimum-cost ``b``-bipartition of a planar graph.

    ``fit`` takes an embedded graph (or instance dict / path) and stores
    ``labels_`` with 1 for vertices on the U side.
    """

    def __init__(self, b=0.5, epsilon=0.3, kmax=DEFAULT_KMAX, state_limit=DEFAULT_STATE_LIMIT, lambdas=None):
        self.b = b
        self.epsilon = epsilon
        self.kmax = kmax
        self.state_limit = state_limit
        self.lambdas = lambdas

    def fit(self, X, y=None):
        g, outer = check_graph(X)
        b = check_fraction("b", self.b, 0, 1)
        eps = check_fraction("epsilon", self.epsilon, 0, strict_lo=True)
        if int(self.kmax) < 1:
            raise PlanarError("kmax must be at least 1")
        sol, report = solve(
            g, b, eps, lambdas=self.lambdas, kmax=int(self.kmax), state_limit=int(self.state_limit), outer=outer
        )
        labels = np.zeros(g.n, dtype=int)
        labels[sorted(sol.side_u)] = 1
        self.labels_ = labels
        self.cost_ = sol.cost
        self.balance_ = sol.balance
        self.report_ = report
        self.n_vertices_ = g.n
        return self

    def predict(self, X=None):
        if not hasattr(self, "labels_"):
            raise NotFittedError("call fit first")
        if X is None:
            return self.labels_
        return self.fit(X).labels_

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_
