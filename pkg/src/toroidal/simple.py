"""Type-A simple Lie algebras as traceless matrices, with a family of
finite-dimensional modules and gl_n extensions.

The Chevalley basis carries sign adjustments so that the structure
constants agree with the bimultiplicative sign function on the root
lattice,

    eps(a_i, a_j) = (-1)^{(a_i, a_j)}  for i > j,   +1 otherwise,

extended bimultiplicatively.  Concretely [x_g, x_m] = eps(g, m) x_{g+m}
whenever g, m, g+m are roots, and [x_g, x_{-g}] = eps(g, -g) h_g.  The
lattice operator calculus in :mod:`toroidal.fock` produces exactly these
constants, so the same basis can be fed to both sides.

The invariant form is the trace form of the defining representation,
which gives (theta, theta) = 2 for the highest root.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .lattice import DimensionError


def eps_sign(gram, p, q):
    """Bimultiplicative cocycle sign for coordinate vectors p, q."""
    e = 0
    for i in range(len(p)):
        if not p[i]:
            continue
        for j in range(i):
            e += gram[i][j] * p[i] * q[j]
    return -1 if e % 2 else 1


def _frac_matrix(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _mat_commutator(x, y):
    n = len(x)
    xy = [[sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    yx = [[sum(y[i][k] * x[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return tuple(tuple(xy[i][j] - yx[i][j] for j in range(n)) for i in range(n))


def _trace_product(x, y):
    n = len(x)
    return sum(x[i][k] * y[k][i] for i in range(n) for k in range(n))


class SimpleAlgebra:
    """sl_{rank+1} with a fixed ordered basis e_*, f_*, h_*.

    Positive roots are the pairs (a, b), 0 <= a < b <= rank, for the
    root e_a - e_b of the defining representation, ordered by height
    then by starting index.  Basis order: all e's, all f's, then the
    h_i.
    """

    series = "A"

    def __init__(self, rank):
        if rank < 1:
            raise ValueError("rank must be >= 1")
        self.rank = rank
        self.size = rank + 1
        d = rank

        cartan = [[0] * d for _ in range(d)]
        for i in range(d):
            cartan[i][i] = 2
            if i + 1 < d:
                cartan[i][i + 1] = cartan[i + 1][i] = -1
        self.cartan = tuple(tuple(row) for row in cartan)

        self.positive = sorted(
            ((a, b) for a in range(self.size) for b in range(a + 1, self.size)),
            key=lambda ab: (ab[1] - ab[0], ab[0]),
        )
        labels = []
        mats = []
        root_coords = []
        for (a, b) in self.positive:
            labels.append(("e", (a, b)))
            mats.append(self._unit(a, b, 1))
            root_coords.append(tuple(1 if a <= i < b else 0 for i in range(d)))
        for (a, b) in self.positive:
            labels.append(("f", (a, b)))
            sign = -1 if (b - a - 1) % 2 else 1
            mats.append(self._unit(b, a, sign))
            root_coords.append(tuple(-1 if a <= i < b else 0 for i in range(d)))
        for i in range(d):
            labels.append(("h", i))
            m = [[Fraction(0)] * self.size for _ in range(self.size)]
            m[i][i] = Fraction(1)
            m[i + 1][i + 1] = Fraction(-1)
            mats.append(tuple(tuple(row) for row in m))
            root_coords.append(None)

        self.labels = tuple(labels)
        self.matrices = tuple(mats)
        self.root_coords = tuple(root_coords)
        self.dim = len(labels)
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._by_root = {rc: i for i, rc in enumerate(root_coords) if rc is not None}

        self.form_matrix = tuple(
            tuple(_trace_product(x, y) for y in mats) for x in mats
        )
        struct = {}
        for i in range(self.dim):
            for j in range(self.dim):
                c = self.expand(_mat_commutator(mats[i], mats[j]))
                struct[(i, j)] = tuple((k, v) for k, v in enumerate(c) if v)
        self.struct = struct
        self.theta = tuple(1 for _ in range(d))

    def _unit(self, i, j, sign):
        m = [[Fraction(0)] * self.size for _ in range(self.size)]
        m[i][j] = Fraction(sign)
        return tuple(tuple(row) for row in m)

    def signature(self):
        return (self.series, self.rank)

    def e_index(self, root):
        """Index of the e (or f) vector for a root given in simple-root coordinates."""
        idx = self._by_root.get(tuple(root))
        if idx is None:
            raise ValueError(f"not a root: {root}")
        return idx

    def h_index(self, i):
        return self._index[("h", i)]

    def expand(self, matrix):
        """Coordinates of a traceless matrix in the ordered basis."""
        if len(matrix) != self.size:
            raise DimensionError("matrix size mismatch")
        coeffs = [Fraction(0)] * self.dim
        npos = len(self.positive)
        for k, (a, b) in enumerate(self.positive):
            coeffs[k] = Fraction(matrix[a][b])
            sign = -1 if (b - a - 1) % 2 else 1
            coeffs[npos + k] = Fraction(matrix[b][a]) * sign
        acc = Fraction(0)
        for i in range(self.rank):
            acc += Fraction(matrix[i][i])
            coeffs[2 * npos + i] = acc
        return tuple(coeffs)

    def bracket_coeffs(self, x, y):
        """Bracket of two coefficient vectors, as a coefficient vector."""
        out = [Fraction(0)] * self.dim
        for i, ci in enumerate(x):
            if not ci:
                continue
            for j, cj in enumerate(y):
                if not cj:
                    continue
                for k, v in self.struct[(i, j)]:
                    out[k] += ci * cj * v
        return tuple(out)

    def eps(self, p, q):
        return eps_sign(self.cartan, p, q)

    def __repr__(self):
        return f"SimpleAlgebra(A{self.rank})"


_ALGEBRAS = {}


def build_simple(rank, series="A"):
    """The simple algebra sl_{rank+1}; instances are cached per rank."""
    if series != "A":
        raise ValueError("only type A is supported")
    if rank < 1:
        raise ValueError("rank must be >= 1")
    if rank not in _ALGEBRAS:
        _ALGEBRAS[rank] = SimpleAlgebra(rank)
    return _ALGEBRAS[rank]


def bracket_g(alg, x, y):
    """Matrix commutator re-expressed in the basis.

    x, y may be basis indices or coefficient tuples of the same algebra.
    """
    if isinstance(x, int):
        x = tuple(Fraction(1) if i == x else Fraction(0) for i in range(alg.dim))
    if isinstance(y, int):
        y = tuple(Fraction(1) if i == y else Fraction(0) for i in range(alg.dim))
    if len(x) != alg.dim or len(y) != alg.dim:
        raise DimensionError("coefficient vector of wrong length")
    return alg.bracket_coeffs(x, y)


class FiniteModule:
    """A finite-dimensional module given by its action table.

    ``mats[k]`` is the matrix of the k-th algebra basis element.  The
    ``weights`` entry per module basis vector lists its eigenvalues
    under h_1 .. h_d (all our bases are weight bases).
    """

    def __init__(self, algebra, label, power, mats, dim=None):
        self.algebra = algebra
        self.label = label
        self.power = power
        self.mats = mats
        self.dim = dim if dim is not None else (len(mats[0]) if mats else 1)
        self.weights = self._extract_weights()

    def _extract_weights(self):
        if self.algebra is None:
            return tuple(() for _ in range(self.dim))
        d = self.algebra.rank
        ws = []
        for v in range(self.dim):
            w = []
            for i in range(d):
                m = self.mats[self.algebra.h_index(i)]
                if any(m[r][v] for r in range(self.dim) if r != v):
                    raise ValueError("module basis is not a weight basis")
            ws.append(tuple(self.mats[self.algebra.h_index(i)][v][v] for i in range(d)))
        return tuple(ws)

    def act(self, coeffs, column):
        """Image of the ``column``-th basis vector under sum(coeffs * basis)."""
        out = [Fraction(0)] * self.dim
        for k, c in enumerate(coeffs):
            if not c:
                continue
            m = self.mats[k]
            for r in range(self.dim):
                if m[r][column]:
                    out[r] += c * m[r][column]
        return out

    def matrix_of(self, coeffs):
        cols = [self.act(coeffs, v) for v in range(self.dim)]
        return tuple(tuple(cols[j][i] for j in range(self.dim)) for i in range(self.dim))

    def __repr__(self):
        k = f"^{self.power}" if self.power is not None else ""
        return f"FiniteModule({self.label}{k}, dim={self.dim})"


def _sym_power(alg, k):
    size = alg.size
    basis = list(combinations_with_replacement(range(size), k))
    index = {b: i for i, b in enumerate(basis)}
    mats = []
    for m in alg.matrices:
        out = [[Fraction(0)] * len(basis) for _ in range(len(basis))]
        for col, mono in enumerate(basis):
            for p in range(k):
                i = mono[p]
                for l in range(size):
                    if m[l][i]:
                        new = tuple(sorted(mono[:p] + (l,) + mono[p + 1:]))
                        out[index[new]][col] += m[l][i]
        mats.append(tuple(tuple(row) for row in out))
    return tuple(mats), len(basis)


def _ext_power(alg, k):
    size = alg.size
    basis = list(combinations(range(size), k))
    index = {b: i for i, b in enumerate(basis)}
    mats = []
    for m in alg.matrices:
        out = [[Fraction(0)] * len(basis) for _ in range(len(basis))]
        for col, sub in enumerate(basis):
            for p in range(k):
                i = sub[p]
                for l in range(size):
                    if not m[l][i]:
                        continue
                    if l != i and l in sub:
                        continue
                    rest = sub[:p] + sub[p + 1:]
                    between = sum(1 for x in rest if min(i, l) < x < max(i, l))
                    sign = -1 if between % 2 else 1
                    new = tuple(sorted(rest + (l,)))
                    out[index[new]][col] += sign * m[l][i]
        mats.append(tuple(tuple(row) for row in out))
    return tuple(mats), len(basis)


def irrep(alg, label, k=None):
    """A member of the supported module family for ``alg``.

    Labels: natural, dual, trivial, adjoint, sym (power k), ext
    (power k, 0 <= k <= size).
    """
    if label == "trivial":
        mats = tuple(((Fraction(0),),) for _ in range(alg.dim))
        return FiniteModule(alg, "trivial", None, mats)
    if label == "natural":
        return FiniteModule(alg, "natural", None, alg.matrices)
    if label == "dual":
        mats = tuple(
            tuple(tuple(-m[j][i] for j in range(alg.size)) for i in range(alg.size))
            for m in alg.matrices
        )
        return FiniteModule(alg, "dual", None, mats)
    if label == "adjoint":
        mats = []
        for i in range(alg.dim):
            cols = [
                alg.bracket_coeffs(
                    tuple(Fraction(1 if t == i else 0) for t in range(alg.dim)),
                    tuple(Fraction(1 if t == j else 0) for t in range(alg.dim)),
                )
                for j in range(alg.dim)
            ]
            mats.append(
                tuple(tuple(cols[j][r] for j in range(alg.dim)) for r in range(alg.dim))
            )
        return FiniteModule(alg, "adjoint", None, tuple(mats))
    if label == "sym":
        if k is None or k < 0:
            raise ValueError("sym needs a power k >= 0")
        mats, dim = _sym_power(alg, k)
        return FiniteModule(alg, "sym", k, mats, dim)
    if label == "ext":
        if k is None or k < 0 or k > alg.size:
            raise ValueError(f"ext^k needs 0 <= k <= {alg.size}")
        mats, dim = _ext_power(alg, k)
        return FiniteModule(alg, "ext", k, mats, dim)
    raise ValueError(f"unknown module label: {label}")


def trivial_gl1_module():
    """Degenerate psi for n = 1, where sl_1 = 0 and only b survives."""
    return FiniteModule(None, "trivial", None, (), dim=1)


class GlModule:
    """V(psi, b): an sl_n module with the identity acting by the scalar b.

    The elementary matrix E_{ij} (0-based) acts by
    psi(E_{ij} - delta_{ij} I/n) + delta_{ij} (b/n) id.
    """

    def __init__(self, psi, b):
        self.psi = psi
        self.b = Fraction(b)
        self.n = psi.algebra.size if psi.algebra is not None else 1
        self.dim = psi.dim
        self._emat = {}

    def e_mat(self, i, j):
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise DimensionError("elementary index out of range")
        key = (i, j)
        if key in self._emat:
            return self._emat[key]
        if self.psi.algebra is None:
            mat = ((self.b if i == j else Fraction(0),),)
        else:
            n = self.n
            raw = [[Fraction(0)] * n for _ in range(n)]
            raw[i][j] = Fraction(1)
            if i == j:
                for t in range(n):
                    raw[t][t] -= Fraction(1, n)
            coeffs = self.psi.algebra.expand(raw)
            out = [[Fraction(0)] * self.dim for _ in range(self.dim)]
            for kk, c in enumerate(coeffs):
                if not c:
                    continue
                m = self.psi.mats[kk]
                for r in range(self.dim):
                    for s in range(self.dim):
                        if m[r][s]:
                            out[r][s] += c * m[r][s]
            if i == j:
                for r in range(self.dim):
                    out[r][r] += self.b / self.n
            mat = tuple(tuple(row) for row in out)
        self._emat[key] = mat
        return mat

    def combined_mat(self, pairs):
        """sum of c * E_{ij} for (c, i, j) in pairs, as one matrix."""
        out = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for c, i, j in pairs:
            if not c:
                continue
            m = self.e_mat(i, j)
            for r in range(self.dim):
                for s in range(self.dim):
                    if m[r][s]:
                        out[r][s] += c * m[r][s]
        return tuple(tuple(row) for row in out)

    def __repr__(self):
        return f"GlModule({self.psi.label}, b={self.b}, n={self.n})"


def gl_module(psi, b):
    return GlModule(psi, b)
