"""Concrete module constructions for the toroidal algebras.

All vectors are finite sums of basis tensors v tensor t^m, stored as a
map (index tuple, exponent tuple) -> coefficient.  Everything is exact;
the representation identities asserted in the tests are equalities of
these maps.

Constructions:

* Larsson modules F^alpha(psi, b) = V(psi, b) tensor A with
  D(u,r) v(m) = (u, m+alpha) v(m+r) + (sum_{ij} u_i r_j E_{ji} v)(m+r),
  plus the A action t^r v(m) = v(m+r).
* Evaluation tensor modules with finite-dimensional factors, where
  X t^r acts through evaluation scalars a_I^r.
* Degree-zero top actions: the full-toroidal top W tensor F^alpha(psi,b)
  and the derivation-extension top V(psi,b) tensor A, in n+1 variables
  with t_0 the distinguished coordinate (index 0).
* The center-trivial full-toroidal module W tensor V(psi,b) tensor A.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .core import FlavorError
from .lattice import DimensionError, dot, vec_add, zero_vec


class ModVec:
    """Finite formal sum of basis tensors, tied to a module descriptor."""

    __slots__ = ("module", "terms")

    def __init__(self, module, terms):
        self.module = module
        self.terms = {k: v for k, v in terms.items() if v}

    def __eq__(self, other):
        if not isinstance(other, ModVec):
            return NotImplemented
        return self.module is other.module and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.module is not other.module:
            raise DimensionError("vectors from different modules")
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, Fraction(0)) + v
        return ModVec(self.module, t)

    def __neg__(self):
        return ModVec(self.module, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return ModVec(self.module, {k: c * v for k, v in self.terms.items()} if c else {})

    def __repr__(self):
        bits = [f"{v}*v{list(i)}(m={list(m)})" for (i, m), v in sorted(self.terms.items())]
        return "ModVec(" + (" + ".join(bits) if bits else "0") + ")"


def basis_vector(module, idxs, exp, coeff=1):
    return ModVec(module, {(tuple(idxs), tuple(exp)): Fraction(coeff)})


class LarssonModule:
    """F^alpha(psi, b): the gl_n module V(psi,b) tensored with the Laurent
    ring, carrying the conformal-field action of the derivations."""

    def __init__(self, n, glmod, alpha):
        if glmod.n != n:
            raise DimensionError("gl module is over the wrong n")
        if len(alpha) != n:
            raise DimensionError("alpha must have length n")
        self.n = n
        self.glmod = glmod
        self.alpha = tuple(Fraction(a) for a in alpha)
        self.dim = glmod.dim

    def __repr__(self):
        return f"LarssonModule(n={self.n}, {self.glmod!r}, alpha={self.alpha})"


def larsson_act(u, r, x):
    """D(u, r) applied to a vector of a Larsson module."""
    mod = x.module
    lar = mod if isinstance(mod, LarssonModule) else mod.larsson
    n = lar.n
    if len(u) != n or len(r) != n:
        raise DimensionError("u and r must have length n")
    u = tuple(Fraction(c) for c in u)
    r = tuple(int(c) for c in r)
    emat = lar.glmod.combined_mat(
        [(u[i] * r[j], j, i) for i in range(n) for j in range(n)]
    )
    out = {}
    for (idxs, m), c in x.terms.items():
        v = idxs[-1]
        shifted = vec_add(m, r)
        scal = c * (dot(u, vec_add(m, lar.alpha)))
        key = (idxs[:-1] + (v,), shifted)
        if scal:
            out[key] = out.get(key, Fraction(0)) + scal
        for w in range(lar.dim):
            if emat[w][v]:
                k2 = (idxs[:-1] + (w,), shifted)
                out[k2] = out.get(k2, Fraction(0)) + c * emat[w][v]
    return ModVec(mod, out)


def a_act(r, x):
    """t^r: shift every exponent by r."""
    r = tuple(int(c) for c in r)
    return ModVec(
        x.module, {(idxs, vec_add(m, r)): c for (idxs, m), c in x.terms.items()}
    )


def _row_reduce_insert(rows, vec):
    """Insert vec into a reduced list of rows; returns True if independent."""
    v = list(vec)
    for lead, row in rows:
        if v[lead]:
            f = v[lead]
            for i in range(len(v)):
                v[i] -= f * row[i]
    for i, x in enumerate(v):
        if x:
            inv = Fraction(1) / x
            v = [y * inv for y in v]
            rows.append((i, v))
            return True
    return False


def closure_check(seed, module, box, sample):
    """Finite certificate for a submodule claim.

    Applies the sampled derivation pairs (u, r) to the graded span of
    ``seed`` inside the exponent box, discarding images that leave the
    box.  Returns (closed, dims) where dims maps each in-box degree to
    the stabilized span dimension and ``closed`` is True when the total
    span stays strictly below the full box dimension.
    """
    lar = module if isinstance(module, LarssonModule) else module.larsson
    lo, hi = zip(*box) if box else ((), ())
    if len(lo) != lar.n:
        raise DimensionError("box must bound every exponent coordinate")
    if any(l > h for l, h in box):
        raise ValueError("empty box")

    def in_box(m):
        return all(l <= x <= h for x, (l, h) in zip(m, box))

    spans = {}

    def insert(vec):
        degs = {m for (_, m) in vec.terms}
        if len(degs) != 1:
            raise ValueError("closure_check needs homogeneous vectors")
        (m,) = degs
        if not in_box(m):
            return False
        row = [Fraction(0)] * lar.dim
        for (idxs, _), c in vec.terms.items():
            row[idxs[-1]] = c
        rows = spans.setdefault(m, [])
        grew = _row_reduce_insert(rows, row)
        return grew

    work = []
    if not seed.is_zero():
        by_deg = {}
        for (idxs, m), c in seed.terms.items():
            by_deg.setdefault(m, {})[(idxs, m)] = c
        for m, terms in by_deg.items():
            vec = ModVec(seed.module, terms)
            if insert(vec):
                work.append(vec)

    while work:
        vec = work.pop()
        for u, r in sample:
            img = larsson_act(u, r, vec)
            if img.is_zero():
                continue
            if insert(img):
                work.append(img)

    dims = {m: len(rows) for m, rows in spans.items()}
    n_boxes = 1
    for l, h in box:
        n_boxes *= h - l + 1
    total = sum(dims.values())
    closed = total < n_boxes * lar.dim
    return closed, dims


def submodule_witness(module):
    """A vector generating a proper graded submodule, when one is known.

    Covered cases: (trivial, 0) with integral alpha gives the
    annihilated vector v(-alpha); (Lambda^k, k), including the natural
    module at b = 1, gives the image of the exterior-derivative map at
    one degree.  Returns None otherwise; no irreducibility claim is
    implied by a None.
    """
    lar = module
    gl = lar.glmod
    psi = gl.psi
    n = lar.n
    if any(a.denominator != 1 for a in lar.alpha):
        return None
    alpha_int = tuple(int(a) for a in lar.alpha)

    if psi.label == "trivial" and gl.b == 0:
        m = tuple(-a for a in alpha_int)
        return basis_vector(lar, (0,), m)

    k = None
    if psi.label == "natural" and gl.b == 1:
        k = 1
    elif psi.label == "ext" and gl.b == psi.power:
        k = psi.power
    if k is None or not (1 <= k <= n):
        return None

    from itertools import combinations

    ext_basis = list(combinations(range(n), k))
    index = {b: i for i, b in enumerate(ext_basis)}
    xi = tuple(range(k - 1))
    free = next(i for i in range(n) if i not in xi)
    m = tuple(1 if i == free else 0 for i in range(n))
    if all(mi + ai == 0 for mi, ai in zip(m, alpha_int)):
        m = tuple(2 if i == free else 0 for i in range(n))
    terms = {}
    for i in range(n):
        if i in xi:
            continue
        coeff = Fraction(m[i] + alpha_int[i])
        if not coeff:
            continue
        merged = tuple(sorted(xi + (i,)))
        between = sum(1 for x in xi if x > i)
        sign = -1 if between % 2 else 1
        key = ((index[merged],), m)
        terms[key] = terms.get(key, Fraction(0)) + sign * coeff
    vec = ModVec(lar, terms)
    return None if vec.is_zero() else vec


class EvalModule:
    """Tensor product of finite-dimensional modules twisted by evaluation
    at nonzero points, with the Laurent grading factor."""

    def __init__(self, algebra, n, points, factors):
        self.algebra = algebra
        self.n = n
        if len(points) != n:
            raise DimensionError("need evaluation points for each variable")
        pts = []
        for per_var in points:
            row = tuple(Fraction(a) for a in per_var)
            if any(a == 0 for a in row):
                raise ValueError("evaluation points must be nonzero")
            if len(set(row)) != len(row):
                raise ValueError("evaluation points must be distinct per variable")
            pts.append(row)
        self.points = tuple(pts)
        self.sizes = tuple(len(p) for p in self.points)
        self.index_order = list(product(*(range(s) for s in self.sizes)))
        self.count = len(self.index_order)
        if len(factors) != self.count:
            raise DimensionError(f"need {self.count} tensor factors")
        for w in factors:
            if w.algebra is not algebra:
                raise DimensionError("factors must be modules of the ambient algebra")
        self.factors = tuple(factors)

    def eval_scalar(self, j, r):
        """a_{I_j}^r for the j-th tensor slot."""
        s = Fraction(1)
        idx = self.index_order[j]
        for v in range(self.n):
            e = r[v]
            if e:
                s *= self.points[v][idx[v]] ** e
        return s

    def __repr__(self):
        labels = ",".join(w.label for w in self.factors)
        return f"EvalModule(n={self.n}, N={self.count}, [{labels}])"


def _coeff_vec(alg, x):
    if isinstance(x, int):
        return tuple(Fraction(1) if i == x else Fraction(0) for i in range(alg.dim))
    if len(x) != alg.dim:
        raise DimensionError("coefficient vector of wrong length")
    return tuple(Fraction(c) for c in x)


def eval_act(x_elt, r, vec):
    """(X tensor t^r) acting on an evaluation-module vector."""
    mod = vec.module
    coeffs = _coeff_vec(mod.algebra, x_elt)
    r = tuple(int(c) for c in r)
    if len(r) != mod.n:
        raise DimensionError("exponent of wrong length")
    mats = [w.matrix_of(coeffs) for w in mod.factors]
    scalars = [mod.eval_scalar(j, r) for j in range(mod.count)]
    out = {}
    for (idxs, s), c in vec.terms.items():
        shifted = vec_add(s, r)
        for j in range(mod.count):
            m = mats[j]
            bj = idxs[j]
            cj = c * scalars[j]
            for w in range(mod.factors[j].dim):
                if m[w][bj]:
                    key = (idxs[:j] + (w,) + idxs[j + 1:], shifted)
                    out[key] = out.get(key, Fraction(0)) + cj * m[w][bj]
    return ModVec(mod, out)


def eval_d_act(i, vec):
    """Degree derivation d_i: multiply each term by its i-th exponent."""
    return ModVec(
        vec.module, {(idxs, s): c * s[i] for (idxs, s), c in vec.terms.items()}
    )


def nilpotency_index(root_index, m, vec):
    """Smallest k with (X t^m)^k vec = 0 for a root vector X."""
    mod = vec.module
    if mod.algebra.root_coords[root_index] is None:
        raise ValueError("nilpotency_index needs a root vector")
    k = 0
    cur = vec
    while not cur.is_zero():
        cur = eval_act(root_index, m, cur)
        k += 1
        if k > 512:
            raise RuntimeError("nilpotency bound blown; not a nilpotent action?")
    return max(k, 1)


def matrix_nilpotency(mat):
    """Smallest k with mat^k = 0 (must be nilpotent)."""
    dim = len(mat)
    cur = mat
    k = 1
    while any(any(row) for row in cur):
        cur = tuple(
            tuple(sum(cur[i][t] * mat[t][j] for t in range(dim)) for j in range(dim))
            for i in range(dim)
        )
        k += 1
        if k > dim + 1:
            raise ValueError("matrix is not nilpotent")
    return k


def weight_space_dim(mod, gweight, s):
    """Dimension of the (h-weight, degree) simultaneous eigenspace."""
    gweight = tuple(Fraction(x) for x in gweight)
    count = 0
    for combo in product(*(range(w.dim) for w in mod.factors)):
        total = None
        for j, b in enumerate(combo):
            w = mod.factors[j].weights[b]
            total = w if total is None else tuple(a + x for a, x in zip(total, w))
        if tuple(total) == gweight:
            count += 1
    return count


class TopModule:
    """Degree-zero top W tensor F^alpha(psi, b) for the full toroidal
    algebra in n+1 variables; K_0 acts by the positive integer C0 and
    the distinguished degree operator by the scalar d."""

    def __init__(self, w_module, larsson, c0, d):
        self.w = w_module
        self.larsson = larsson
        self.c0 = Fraction(c0)
        if self.c0.denominator != 1 or self.c0 <= 0:
            raise ValueError("C0 must be a positive integer")
        self.d = Fraction(d)
        self.n = larsson.n

    def __repr__(self):
        return f"TopModule(W={self.w.label}, {self.larsson!r}, C0={self.c0}, d={self.d})"


class DerTopModule:
    """Degree-zero top V(psi, b) tensor A for the derivation extension in
    n+1 variables; K_0 acts by C and t_0 d/dt_0 by d."""

    def __init__(self, larsson, c, d):
        self.larsson = larsson
        self.c = Fraction(c)
        self.d = Fraction(d)
        self.n = larsson.n

    def __repr__(self):
        return f"DerTopModule({self.larsson!r}, C={self.c}, d={self.d})"


class CenterTrivialModule:
    """W tensor V(psi, b) tensor A as a module for the full toroidal
    algebra in n variables, center acting by zero."""

    def __init__(self, w_module, larsson):
        self.w = w_module
        self.larsson = larsson
        self.n = larsson.n

    def __repr__(self):
        return f"CenterTrivialModule(W={self.w.label}, {self.larsson!r})"


def _check_degree_zero(g):
    for (_, _, exp) in g.terms:
        if exp[0] != 0:
            raise ValueError("element must have t_0-degree zero")


def _horizontal(exp):
    return exp[1:]


def tau0_act(g, x):
    """Degree-zero full-toroidal action on a TopModule vector.

    g is an element over n+1 variables (flavor tau-hat) whose every
    term has exponent 0 in the distinguished coordinate 0.
    """
    mod = x.module
    if g.n != mod.n + 1:
        raise DimensionError("element must live over n+1 variables")
    _check_degree_zero(g)
    lar = mod.larsson
    out = ModVec(mod, {})
    for (kind, idx, exp), coeff in g.terms.items():
        r = _horizontal(exp)
        if kind == "g":
            wmat = mod.w.mats[idx]
            terms = {}
            for ((wi, vi), s), c in x.terms.items():
                shifted = vec_add(s, r)
                for w2 in range(mod.w.dim):
                    if wmat[w2][wi]:
                        key = ((w2, vi), shifted)
                        terms[key] = terms.get(key, Fraction(0)) + c * wmat[w2][wi]
            out = out + ModVec(mod, terms).scale(coeff)
        elif kind == "d":
            if idx == 0:
                out = out + a_act(r, x).scale(coeff * mod.d)
            else:
                u = tuple(Fraction(1) if i == idx - 1 else Fraction(0) for i in range(mod.n))
                out = out + larsson_act(u, r, x).scale(coeff)
        else:
            if idx == 0:
                out = out + a_act(r, x).scale(coeff * mod.c0)
            # horizontal center acts by zero
    return out


def derhat0_act(g, x):
    """Degree-zero derivation-extension action on a DerTopModule vector."""
    mod = x.module
    if g.n != mod.n + 1:
        raise DimensionError("element must live over n+1 variables")
    if g.flavor != "derahat":
        raise FlavorError("derhat0_act expects a derahat element")
    _check_degree_zero(g)
    out = ModVec(mod, {})
    for (kind, idx, exp), coeff in g.terms.items():
        r = _horizontal(exp)
        if kind == "d":
            if idx == 0:
                out = out + a_act(r, x).scale(coeff * mod.d)
            else:
                u = tuple(Fraction(1) if i == idx - 1 else Fraction(0) for i in range(mod.n))
                out = out + larsson_act(u, r, x).scale(coeff)
        else:
            if idx == 0:
                out = out + a_act(r, x).scale(coeff * mod.c)
    return out


def center_trivial_act(g, x):
    """Full toroidal action on W tensor V(psi,b) tensor A, center -> 0."""
    mod = x.module
    if g.n != mod.n:
        raise DimensionError("element over the wrong number of variables")
    out = ModVec(mod, {})
    for (kind, idx, exp), coeff in g.terms.items():
        if kind == "g":
            wmat = mod.w.mats[idx]
            terms = {}
            for ((wi, vi), s), c in x.terms.items():
                shifted = vec_add(s, exp)
                for w2 in range(mod.w.dim):
                    if wmat[w2][wi]:
                        key = ((w2, vi), shifted)
                        terms[key] = terms.get(key, Fraction(0)) + c * wmat[w2][wi]
            out = out + ModVec(mod, terms).scale(coeff)
        elif kind == "d":
            u = tuple(Fraction(1) if i == idx else Fraction(0) for i in range(mod.n))
            out = out + larsson_act(u, exp, x).scale(coeff)
        # center: zero
    return out
