"""Multi-variable toroidal Lie algebra elements and their brackets.

An element is a finite rational combination of basis keys over the
Laurent ring in n variables (exponents are tuples r in Z^n):

    ("g", a, r)   basis element a of the simple algebra, tensored t^r
    ("k", i, r)   center symbol t^r K_i, 0 <= i < n
    ("d", i, r)   derivation t^r t_i d/dt_i

Center keys are kept canonical modulo the relations
sum_i r_i t^r K_i = 0: for r != 0 the key with i = pivot(r), the
largest index with r_i != 0, is rewritten into the remaining ones.
At r = 0 all n center keys are free.

Flavors restrict which keys may appear:

    tau        g + center          (center is central here)
    tau-tilde  tau + degree derivations, i.e. d keys with r = 0
    tau-hat    g + center + all derivations
    derahat    center + derivations, no g part

Writing D(u, r) = sum_i u_i ("d", i, r) and K(u, r) = sum u_i ("k", i, r),
the bracket implements

    [X t^r, Y t^s]      = [X,Y] t^{r+s} + <X,Y> K(r, r+s)
    [D(u,r), D(v,s)]    = D((u,s)v - (v,r)u, r+s) - (u,s)(v,r) K(r, r+s)
    [D(u,r), K(v,s)]    = (u,s) K(v, r+s) + (u,v) K(r, r+s)
    [D(u,r), X t^s]     = (u,s) X t^{r+s}
    [K, K] = 0, and K central in flavor tau.
"""

from __future__ import annotations

from fractions import Fraction

from .lattice import (
    DimensionError,
    is_unimodular,
    mat_vec,
    matrix_inverse,
    vec_add,
    zero_vec,
)

FLAVORS = ("tau", "tau-tilde", "tau-hat", "derahat")

_ALLOWED_KINDS = {
    "tau": {"g", "k"},
    "tau-tilde": {"g", "k", "d"},
    "tau-hat": {"g", "k", "d"},
    "derahat": {"k", "d"},
}


class FlavorError(ValueError):
    """Element does not live in the requested algebra flavor."""


def pivot(r):
    """Largest index with a nonzero exponent, or None for r = 0."""
    for i in range(len(r) - 1, -1, -1):
        if r[i]:
            return i
    return None


def _validate_key(flavor, n, algebra, key):
    kind, idx, exp = key
    if kind not in _ALLOWED_KINDS[flavor]:
        raise FlavorError(f"key kind {kind!r} not allowed in flavor {flavor!r}")
    if len(exp) != n or any(x != int(x) for x in exp):
        raise DimensionError(f"exponent {exp} is not in Z^{n}")
    if kind == "g":
        if algebra is None:
            raise FlavorError("g key without an ambient simple algebra")
        if not (0 <= idx < algebra.dim):
            raise DimensionError(f"basis index {idx} out of range")
    else:
        if not (0 <= idx < n):
            raise DimensionError(f"index {idx} out of range for n={n}")
    if kind == "d" and flavor == "tau-tilde" and any(exp):
        raise FlavorError("tau-tilde admits only degree derivations (r = 0)")


def _canonicalize(terms, n):
    out = {}
    for key, coeff in terms.items():
        if not coeff:
            continue
        kind, idx, exp = key
        if kind == "k":
            p = pivot(exp)
            if p is not None and idx == p:
                # t^r K_p = -(1/r_p) sum_{j != p} r_j t^r K_j
                for j, rj in enumerate(exp):
                    if j != p and rj:
                        k2 = ("k", j, exp)
                        out[k2] = out.get(k2, Fraction(0)) - coeff * Fraction(rj, exp[p])
                continue
        out[key] = out.get(key, Fraction(0)) + coeff
    return {k: v for k, v in out.items() if v}


class TorElt:
    """Immutable-by-convention element of one of the toroidal flavors."""

    __slots__ = ("flavor", "n", "algebra", "terms")

    def __init__(self, flavor, n, algebra, terms):
        self.flavor = flavor
        self.n = n
        self.algebra = algebra
        self.terms = terms

    def _sig(self):
        alg = None if self.algebra is None else self.algebra.signature()
        return (self.flavor, self.n, alg)

    def __eq__(self, other):
        if not isinstance(other, TorElt):
            return NotImplemented
        return self._sig() == other._sig() and self.terms == other.terms

    def __hash__(self):
        return hash((self._sig(), frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self._sig() != other._sig():
            raise DimensionError("elements live in different algebras")
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, Fraction(0)) + v
        return TorElt(self.flavor, self.n, self.algebra, {k: v for k, v in t.items() if v})

    def __neg__(self):
        return TorElt(self.flavor, self.n, self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return TorElt(self.flavor, self.n, self.algebra, {})
        return TorElt(self.flavor, self.n, self.algebra, {k: c * v for k, v in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return f"TorElt({self.flavor}, 0)"
        bits = []
        for key in sorted(self.terms, key=_term_sort_key):
            kind, idx, exp = key
            bits.append(f"{self.terms[key]}*{kind}[{idx}]t^{list(exp)}")
        return f"TorElt({self.flavor}, " + " + ".join(bits) + ")"


def _term_sort_key(key):
    kind, idx, exp = key
    return ({"g": 0, "k": 1, "d": 2}[kind], idx, exp)


def element(flavor, n, algebra, terms):
    """Build a canonical element from (key, coeff) pairs."""
    if flavor not in FLAVORS:
        raise FlavorError(f"unknown flavor {flavor!r}")
    acc = {}
    for key, coeff in terms:
        kind, idx, exp = key
        key = (kind, idx, tuple(int(x) for x in exp))
        _validate_key(flavor, n, algebra, key)
        c = Fraction(coeff)
        if c:
            acc[key] = acc.get(key, Fraction(0)) + c
    return TorElt(flavor, n, algebra, _canonicalize(acc, n))


def zero(flavor, n, algebra=None):
    return TorElt(flavor, n, algebra, {})


def g_term(flavor, n, algebra, basis_index, exp, coeff=1):
    return element(flavor, n, algebra, [(("g", basis_index, tuple(exp)), coeff)])


def center_term(flavor, n, index, exp, coeff=1, algebra=None):
    return element(flavor, n, algebra, [(("k", index, tuple(exp)), coeff)])


def deriv_term(flavor, n, index, exp, coeff=1, algebra=None):
    return element(flavor, n, algebra, [(("d", index, tuple(exp)), coeff)])


def deriv_vec(flavor, n, u, exp, algebra=None):
    """D(u, r) as an element; u is a rational vector of length n."""
    if len(u) != n:
        raise DimensionError("coefficient vector of wrong length")
    return element(
        flavor, n, algebra, [(("d", i, tuple(exp)), ui) for i, ui in enumerate(u)]
    )


def center_vec(flavor, n, u, exp, algebra=None):
    """K(u, r) as an element."""
    if len(u) != n:
        raise DimensionError("coefficient vector of wrong length")
    return element(
        flavor, n, algebra, [(("k", i, tuple(exp)), ui) for i, ui in enumerate(u)]
    )


def canonicalize_center(pairs, n, flavor="tau", algebra=None):
    """Canonical form of a formal sum of t^r K_i terms.

    ``pairs`` iterates over (index, exponent, coefficient).
    """
    return element(flavor, n, algebra, [(("k", i, tuple(e)), c) for i, e, c in pairs])


def _pair_bracket(alg, kx, ky):
    """Bracket of two basis keys as a list of (key, coeff); not canonical."""
    tx, ty = kx[0], ky[0]
    if tx == "k" or ty == "k":
        if tx == "k" and ty == "k":
            return []
        if tx == "k" and ty == "g" or tx == "g" and ty == "k":
            return []
        if tx == "d":
            _, i, r = kx
            _, j, s = ky
            rs = vec_add(r, s)
            out = []
            if s[i]:
                out.append((("k", j, rs), Fraction(s[i])))
            if i == j:
                out.extend((("k", l, rs), Fraction(rl)) for l, rl in enumerate(r) if rl)
            return out
        return [(key, -c) for key, c in _pair_bracket(alg, ky, kx)]
    if tx == "g" and ty == "g":
        _, a, r = kx
        _, b, s = ky
        rs = vec_add(r, s)
        out = [(("g", c, rs), v) for c, v in alg.struct[(a, b)]]
        f = alg.form_matrix[a][b]
        if f:
            out.extend((("k", i, rs), Fraction(f) * ri) for i, ri in enumerate(r) if ri)
        return out
    if tx == "d" and ty == "d":
        _, i, r = kx
        _, j, s = ky
        rs = vec_add(r, s)
        out = []
        if s[i]:
            out.append((("d", j, rs), Fraction(s[i])))
        if r[j]:
            out.append((("d", i, rs), Fraction(-r[j])))
        c = s[i] * r[j]
        if c:
            out.extend((("k", l, rs), Fraction(-c * rl)) for l, rl in enumerate(r) if rl)
        return out
    if tx == "d" and ty == "g":
        _, i, r = kx
        _, b, s = ky
        if s[i]:
            return [(("g", b, vec_add(r, s)), Fraction(s[i]))]
        return []
    if tx == "g" and ty == "d":
        return [(key, -c) for key, c in _pair_bracket(alg, ky, kx)]
    raise AssertionError(f"unhandled key pair {tx}, {ty}")


def bracket(x, y):
    """Lie bracket of two elements of the same flavor."""
    if not isinstance(x, TorElt) or not isinstance(y, TorElt):
        raise TypeError("bracket needs two TorElt values")
    if x.flavor != y.flavor:
        raise FlavorError(f"flavor mismatch: {x.flavor} vs {y.flavor}")
    if x._sig() != y._sig():
        raise DimensionError("elements live in different algebras")
    acc = {}
    for kx, cx in x.terms.items():
        for ky, cy in y.terms.items():
            c = cx * cy
            for key, v in _pair_bracket(x.algebra, kx, ky):
                acc[key] = acc.get(key, Fraction(0)) + c * v
    return TorElt(x.flavor, x.n, x.algebra, _canonicalize(acc, x.n))


def twist(b_matrix, x):
    """Automorphism attached to a unimodular matrix B.

    Exponents map r -> B r.  Coefficient vectors transform so that all
    brackets are preserved: K(u, r) -> K(B u, B r) and
    D(u, r) -> D((B^T)^{-1} u, B r); on the g part only the exponent
    moves.
    """
    if len(b_matrix) != x.n or not is_unimodular(b_matrix):
        raise DimensionError("twist needs an n x n unimodular matrix")
    binv = matrix_inverse(b_matrix)
    acc = []
    for (kind, idx, exp), coeff in x.terms.items():
        new_exp = tuple(int(v) for v in mat_vec(b_matrix, exp))
        if kind == "g":
            acc.append((("g", idx, new_exp), coeff))
        elif kind == "k":
            # column idx of B
            for j in range(x.n):
                if b_matrix[j][idx]:
                    acc.append((("k", j, new_exp), coeff * b_matrix[j][idx]))
        else:
            # row idx of B^{-1} gives (B^T)^{-1} e_idx
            for j in range(x.n):
                if binv[idx][j]:
                    acc.append((("d", j, new_exp), coeff * binv[idx][j]))
    return element(x.flavor, x.n, x.algebra, acc)


class AffineLoopElt:
    """Element of (affine G) tensor Laurent ring in n-1 variables, plus
    the degree derivations d_0 .. d_{n-1}.

    Keys:
        ("g", a, k, p)  algebra basis element a, t_n-power k, monomial p
        ("K", p)        central K tensor monomial p
        ("d", i)        degree derivation
    with p a tuple of length n-1.
    """

    __slots__ = ("n", "algebra", "terms")

    def __init__(self, n, algebra, terms):
        self.n = n
        self.algebra = algebra
        self.terms = {k: v for k, v in terms.items() if v}

    def _sig(self):
        alg = None if self.algebra is None else self.algebra.signature()
        return (self.n, alg)

    def __eq__(self, other):
        if not isinstance(other, AffineLoopElt):
            return NotImplemented
        return self._sig() == other._sig() and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, Fraction(0)) + v
        return AffineLoopElt(self.n, self.algebra, t)

    def __repr__(self):
        return f"AffineLoopElt({dict(self.terms)!r})"


def phi_reduce(x):
    """Reduction onto the loop-of-affine algebra.

    Defined on flavor tau-tilde:
        X t^r        -> (X t_n^{r_n}) t^{r'}
        t^m K_i      -> K t^{m'} when i = n-1 and m_{n-1} = 0, else 0
        d_i          -> d_i
    where primes drop the last coordinate.
    """
    if x.flavor != "tau-tilde":
        raise FlavorError("phi_reduce is defined on flavor tau-tilde")
    n = x.n
    acc = {}
    for (kind, idx, exp), coeff in x.terms.items():
        if kind == "g":
            key = ("g", idx, exp[n - 1], exp[: n - 1])
        elif kind == "k":
            if idx == n - 1 and exp[n - 1] == 0:
                key = ("K", exp[: n - 1])
            else:
                continue
        else:
            key = ("d", idx)
        acc[key] = acc.get(key, Fraction(0)) + coeff
    return AffineLoopElt(n, x.algebra, acc)


def affine_bracket(x, y):
    """Bracket on the image algebra of :func:`phi_reduce`.

    The affine part has [X t_n^a, Y t_n^b] = [X,Y] t_n^{a+b}
    + a delta_{a+b,0} <X,Y> K, extended A_{n-1}-bilinearly, with K
    central; d_i act as degree operators (d_{n-1} measures the
    t_n-power).
    """
    if x._sig() != y._sig():
        raise DimensionError("elements live in different algebras")
    alg = x.algebra
    n = x.n
    acc = {}

    def add(key, v):
        if v:
            acc[key] = acc.get(key, Fraction(0)) + v

    def eig(i, k, p):
        return k if i == n - 1 else p[i]

    for kx, cx in x.terms.items():
        for ky, cy in y.terms.items():
            c = cx * cy
            if kx[0] == "g" and ky[0] == "g":
                _, a, ka, pa = kx
                _, b, kb, pb = ky
                pq = vec_add(pa, pb)
                for t, v in alg.struct[(a, b)]:
                    add(("g", t, ka + kb, pq), c * v)
                if ka + kb == 0:
                    f = alg.form_matrix[a][b]
                    if f:
                        add(("K", pq), c * ka * f)
            elif kx[0] == "d" and ky[0] == "g":
                _, i = kx
                _, b, kb, pb = ky
                add(("g", b, kb, pb), c * eig(i, kb, pb))
            elif kx[0] == "g" and ky[0] == "d":
                _, a, ka, pa = kx
                _, i = ky
                add(("g", a, ka, pa), -c * eig(i, ka, pa))
            elif kx[0] == "d" and ky[0] == "K":
                _, i = kx
                _, pb = ky
                add(("K", pb), c * eig(i, 0, pb))
            elif kx[0] == "K" and ky[0] == "d":
                _, pa = kx
                _, i = ky
                add(("K", pa), -c * eig(i, 0, pa))
            # d-d, K-K, g-K: zero
    return AffineLoopElt(n, alg, acc)
