"""Root data for the extended Cartan of the n-variable toroidal algebra.

Weights live in the ordered basis (alpha_1..alpha_d, delta_1..delta_n,
Lambda_1..Lambda_n), length d + 2n.  The bilinear form has block shape

    [ A  0  0 ]
    [ 0  0  I ]
    [ 0  I  0 ]

with A the finite Cartan matrix, so all delta_r are null and the
Lambda's pair integrally against them.
"""

from __future__ import annotations

from fractions import Fraction

from .lattice import DimensionError, dot


def gram_matrix(alg, n):
    """Symmetric (d+2n) x (d+2n) integer Gram matrix."""
    d = alg.rank
    size = d + 2 * n
    rows = [[0] * size for _ in range(size)]
    for i in range(d):
        for j in range(d):
            rows[i][j] = alg.cartan[i][j]
    for i in range(n):
        rows[d + i][d + n + i] = 1
        rows[d + n + i][d + i] = 1
    return tuple(tuple(r) for r in rows)


def form(alg, n, lam, mu):
    """Pairing lam^T . gram . mu of two weight vectors."""
    size = alg.rank + 2 * n
    if len(lam) != size or len(mu) != size:
        raise DimensionError(f"weight vectors must have length {size}")
    g = gram_matrix(alg, n)
    total = Fraction(0)
    for i, li in enumerate(lam):
        if li:
            total += li * dot(g[i], mu)
    return total


def weight_vec(alg, n, alpha=(), delta=(), lam=()):
    """Assemble a weight vector from its three blocks."""
    d = alg.rank
    a = list(alpha) + [0] * (d - len(alpha))
    de = list(delta) + [0] * (n - len(delta))
    la = list(lam) + [0] * (n - len(lam))
    return tuple(Fraction(x) for x in a + de + la)


def root_space_dim(alg, n, gamma):
    """Dimension of the root space of tau-tilde at the weight gamma.

    Real roots alpha + delta_r give 1, nonzero null weights delta_r give
    d + (n - 1) (the Cartan loop plus the canonical center keys at that
    degree), gamma = 0 gives the full extended Cartan d + 2n.  Anything
    else, including nonzero Lambda coefficients, gives 0.
    """
    d = alg.rank
    size = d + 2 * n
    if len(gamma) != size:
        raise DimensionError(f"weight vector must have length {size}")
    gamma = tuple(Fraction(x) for x in gamma)
    if any(gamma[d + n:]):
        return 0
    alpha = gamma[:d]
    delta = gamma[d:d + n]
    if any(x.denominator != 1 for x in alpha) or any(x.denominator != 1 for x in delta):
        return 0
    alpha = tuple(int(x) for x in alpha)
    if any(alpha):
        if alpha in alg._by_root:
            return 1
        return 0
    if any(delta):
        return d + (n - 1)
    return d + 2 * n


def gim_matrix(alg, n):
    """Intersection matrix of the extended simple roots.

    The extra roots are theta - delta_j for the highest root theta; all
    the deltas are isotropic and orthogonal to the alphas, so the lower
    right block is constantly (theta, theta) = 2.
    """
    d = alg.rank
    theta = alg.theta
    rows = []
    roots = [tuple(1 if i == j else 0 for i in range(d)) for j in range(d)]

    def finite_pair(p, q):
        return sum(
            alg.cartan[i][j] * p[i] * q[j] for i in range(d) for j in range(d)
        )

    for i in range(d + n):
        row = []
        pi = roots[i] if i < d else theta
        for j in range(d + n):
            pj = roots[j] if j < d else theta
            row.append(finite_pair(pi, pj))
        rows.append(tuple(row))
    return tuple(rows)
