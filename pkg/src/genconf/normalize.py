"""Normalization of generic configurations into the reduced space M_{m,n}.

A generic projective configuration q is carried by a unique projective
transform gamma(q) to a configuration whose first m+1 points are the
coordinate points v_1..v_{m+1} and whose (m+2)-nd point is w = [1:...:1].
"""

from __future__ import annotations

from . import arith
from .config import (
    PROJECTIVE,
    Configuration,
    ProjectiveTransform,
    act_transform,
    is_generic,
    proportional,
    standard_rows,
)
from .errors import InvalidConfiguration, NotGeneric


def gamma(config: Configuration) -> ProjectiveTransform:
    """The unique transform taking ``config`` into the reduced space.

    With A the matrix of the first m+1 rows and D_i the determinant of A with
    row i replaced by row m+2, row i of the result is the i-th row of
    adj(A)^T scaled by prod_{k != i} D_k, i.e. (C_{i,j} / D_i) with the
    denominators cleared.  Points are column vectors, so this is the
    transpose of the row-vector form.
    """
    q = config.as_projective()
    m = q.m
    if not is_generic(q):
        raise NotGeneric("gamma is only defined on generic configurations")
    A = tuple(q.row(i) for i in range(1, m + 2))
    w = q.row(m + 2)
    adj = arith.adjugate(A)
    cof = tuple(zip(*adj))  # cof[i][j] = cofactor of A[i][j]
    D = [arith.det(A[:i] + (w,) + A[i + 1:]) for i in range(m + 1)]
    rows = []
    for i in range(m + 1):
        scale = arith.ONE
        for k in range(m + 1):
            if k != i:
                scale = scale * D[k]
        rows.append(tuple(c * scale for c in cof[i]))
    return ProjectiveTransform(tuple(rows))


def is_reduced(config: Configuration) -> bool:
    if config.space != PROJECTIVE:
        return False
    m = config.m
    target = standard_rows(m)
    if not all(proportional(config.row(i + 1), target[i]) for i in range(m + 2)):
        return False
    return is_generic(config)


def normalize(config: Configuration) -> Configuration:
    """gamma(q) q, the representative of q in M_{m,n}."""
    q = config.as_projective()
    return act_transform(gamma(q), q)


def decompose(config: Configuration):
    """q -> (gamma(q), gamma(q) q)."""
    q = config.as_projective()
    T = gamma(q)
    return T, act_transform(T, q)


def compose(T: ProjectiveTransform, reduced: Configuration) -> Configuration:
    """(T, r) -> T^{-1} r; inverse of :func:`decompose`."""
    return act_transform(T.inverse(), reduced)


def embed_P(reduced: Configuration):
    """The m x (n-m-2) matrix of coordinates p_{s,t} on M_{m,n}.

    Entry (s, t) for s = 1..m, t = m+3..n is the cross ratio
    e_{(1..m without s); s, m+1, m+2, t}, which on the reduced space reduces
    to 1 - z_{t,m+1} / z_{t,s}.
    """
    if not is_reduced(reduced):
        raise InvalidConfiguration("embed_P expects a configuration in the reduced space")
    m, n = reduced.m, reduced.n
    out = []
    for s in range(1, m + 1):
        row = []
        for t in range(m + 3, n + 1):
            z = reduced.row(t)
            row.append(arith.ONE - z[m] / z[s - 1])
        out.append(tuple(row))
    return tuple(out)


__all__ = ["gamma", "is_reduced", "normalize", "decompose", "compose", "embed_P"]
