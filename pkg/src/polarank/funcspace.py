"""The algebra k[V] of functions on V with its symplectic group action.

Functions are sparse coefficient dictionaries over the basis monomials
(exponent of each coordinate at most q-1); multiplying functions reduces an
exponent e >= q by e -> e - (q-1), which preserves q-1 and never creates a
spurious 0.  The group acts by coordinate substitution, the convention the
shift-operator computations are written in: act(g, f) replaces coordinate i
by the linear form read off column i of g's matrix, and
act(g*h, f) = act(g, act(h, f)).

Group-ring elements are kept either as collected (scalar, group element)
terms or as lazy products/linear combinations; digit projectors are products
whose full expansion is astronomically large, but their action factors
through the (x_1, y_1) exponent pair, so application memoizes on that pair.

Scalars throughout are field codes; integer binomials and factorials enter
through the prime subfield.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import (
    ContextMismatch,
    DegreeError,
    NotSymplectic,
    RangeError,
)
from .gf import FieldSpec, binom_mod_p
from .geometry import Subspace, SymplecticSpace
from .posets import LambdaType, SignedHType, h_type_from_lambda, signed_leq, type_of


class FunctionSpace:
    """Context object for k[V]: dimensions, caches, and index conventions."""

    def __init__(self, m: int, field: FieldSpec):
        if m < 1:
            raise RangeError("m >= 1")
        self.m = m
        self.field = field
        self.nvars = 2 * m
        self._vectors = None
        self._projector_cache = {}
        self._basis_cache = {}

    @property
    def p(self):
        return self.field.p

    @property
    def t(self):
        return self.field.t

    @property
    def q(self):
        return self.field.q

    def x_index(self, i: int) -> int:
        """Coordinate index of x_i (1-based i)."""
        return i - 1

    def y_index(self, i: int) -> int:
        """Coordinate index of y_i (1-based i)."""
        return self.nvars - i

    def exponents(self, alpha, beta) -> tuple:
        """Exponent tuple of x^alpha y^beta in coordinate order."""
        return tuple(alpha) + tuple(reversed(tuple(beta)))

    def reduce_exp(self, e: int) -> int:
        q = self.q
        while e >= q:
            e -= q - 1
        return e

    def all_vectors(self) -> np.ndarray:
        if self._vectors is None:
            self._vectors = np.array(
                list(itertools.product(range(self.q), repeat=self.nvars)),
                dtype=np.uint8 if self.q <= 255 else np.uint16,
            )
        return self._vectors

    def monomials(self):
        """All q^(2m) basis monomial exponent tuples."""
        return itertools.product(range(self.q), repeat=self.nvars)

    def __eq__(self, other):
        return (
            isinstance(other, FunctionSpace)
            and self.m == other.m
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.m, self.field))

    def __repr__(self):
        return f"FunctionSpace(m={self.m}, q={self.q})"


class FunctionOnV:
    """A k-valued function on V as a sparse monomial coefficient vector."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: FunctionSpace, coeffs: dict):
        self.space = space
        self.coeffs = {e: c for e, c in coeffs.items() if c}

    @staticmethod
    def monomial(space, exps, coeff=1) -> "FunctionOnV":
        """Coefficient is a field code; use field.neg / int_code for signs."""
        exps = tuple(exps)
        if len(exps) != space.nvars or any(not 0 <= e < space.q for e in exps):
            raise RangeError(f"bad exponent tuple {exps}")
        if not 0 <= coeff < space.q:
            raise RangeError(f"coefficient {coeff} is not a field code")
        return FunctionOnV(space, {exps: coeff})

    @staticmethod
    def one(space) -> "FunctionOnV":
        return FunctionOnV(space, {(0,) * space.nvars: 1})

    @staticmethod
    def zero(space) -> "FunctionOnV":
        return FunctionOnV(space, {})

    def _check(self, other):
        if self.space != other.space:
            raise ContextMismatch("functions from different (m, p, t) contexts")

    def __add__(self, other):
        self._check(other)
        add = self.space.field.add
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = add(out.get(e, 0), c)
        return FunctionOnV(self.space, out)

    def __sub__(self, other):
        self._check(other)
        return self + other.scale(self.space.field.neg(1))

    def scale(self, code: int) -> "FunctionOnV":
        mul = self.space.field.mul
        if code == 0:
            return FunctionOnV.zero(self.space)
        return FunctionOnV(self.space, {e: mul(code, c) for e, c in self.coeffs.items()})

    def __neg__(self):
        return self.scale(self.space.field.neg(1))

    def __mul__(self, other):
        return reduce_and_multiply(self, other)

    def __pow__(self, n: int):
        if n < 0:
            raise RangeError("negative powers of functions are not defined")
        result = FunctionOnV.one(self.space)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, FunctionOnV)
            and self.space == other.space
            and self.coeffs == other.coeffs
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, vector) -> int:
        """Value at one vector of V (field code)."""
        fld = self.space.field
        total = 0
        for exps, c in self.coeffs.items():
            val = c
            for v, e in zip(vector, exps):
                if e:
                    val = fld.mul(val, fld.pow(v, e)) if v else 0
                    if val == 0:
                        break
            total = fld.add(total, val)
        return total

    def evaluate_all(self) -> np.ndarray:
        """Values on every vector of V, in lexicographic vector order."""
        sp = self.space
        add_t, mul_t, _, _, pow_t = sp.field.np_tables()
        vectors = sp.all_vectors()
        out = np.zeros(len(vectors), dtype=vectors.dtype)
        for exps, c in self.coeffs.items():
            vals = np.full(len(vectors), c, dtype=vectors.dtype)
            for i, e in enumerate(exps):
                if e:
                    vals = mul_t[vals, pow_t[vectors[:, i], e]]
            out = add_t[out, vals]
        return out

    def __repr__(self):
        items = sorted(self.coeffs.items())[:6]
        body = " + ".join(f"{c}*z^{e}" for e, c in items)
        more = "" if len(self.coeffs) <= 6 else f" ... ({len(self.coeffs)} terms)"
        return f"FunctionOnV[{body or '0'}{more}]"


def reduce_and_multiply(f: FunctionOnV, g: FunctionOnV) -> FunctionOnV:
    """Pointwise product on V: exponents reduced by e -> e - (q-1) while e >= q."""
    f._check(g)
    sp = f.space
    add, mul = sp.field.add, sp.field.mul
    red = sp.reduce_exp
    out = {}
    for e1, c1 in f.coeffs.items():
        for e2, c2 in g.coeffs.items():
            e = tuple(red(a + b) for a, b in zip(e1, e2))
            c = mul(c1, c2)
            prev = out.get(e, 0)
            out[e] = add(prev, c)
    return FunctionOnV(sp, out)


# -- the symplectic group and its action ---------------------------------------


@dataclass(frozen=True)
class GroupElement:
    """A symplectic matrix over GF(q); rows/cols in coordinate order."""

    space: FunctionSpace
    matrix: tuple

    def __post_init__(self):
        n = self.space.nvars
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise NotSymplectic(f"matrix must be {n}x{n}")
        if not _preserves_form(self.space, self.matrix):
            raise NotSymplectic("matrix does not preserve the alternating form")

    @staticmethod
    def identity(space) -> "GroupElement":
        n = space.nvars
        return GroupElement(
            space, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        )

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.space != other.space:
            raise ContextMismatch("group elements from different contexts")
        fld = self.space.field
        n = self.space.nvars
        a, b = self.matrix, other.matrix
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = 0
                for k in range(n):
                    if a[i][k] and b[k][j]:
                        acc = fld.add(acc, fld.mul(a[i][k], b[k][j]))
                row.append(acc)
            rows.append(tuple(row))
        return GroupElement(self.space, tuple(rows))

    def xy_block(self):
        """(a, b, c, d) when the matrix only mixes x_1 and y_1, else None."""
        n = self.space.nvars
        mat = self.matrix
        for j in range(1, n - 1):
            for i in range(n):
                if mat[i][j] != (1 if i == j else 0):
                    return None
        for j in (0, n - 1):
            for i in range(1, n - 1):
                if mat[i][j] != 0:
                    return None
        return (mat[0][0], mat[0][n - 1], mat[n - 1][0], mat[n - 1][n - 1])


def _preserves_form(space: FunctionSpace, matrix) -> bool:
    m, n = space.m, space.nvars
    fld = space.field
    neg = fld.neg

    def gram(i, j):
        if j == n - 1 - i:
            return 1 if i < m else neg(1)
        return 0

    for i in range(n):
        for j in range(i + 1, n):
            # (M^T G M)[i][j] = sum_{k,l} M[k][i] G(k,l) M[l][j]
            acc = 0
            for k in range(n):
                if matrix[k][i]:
                    l = n - 1 - k
                    g = gram(k, l)
                    if matrix[l][j]:
                        acc = fld.add(acc, fld.mul(matrix[k][i], fld.mul(g, matrix[l][j])))
            if acc != gram(i, j):
                return False
    return True


def symplectic_transvection(space: FunctionSpace, v, mu_code: int) -> GroupElement:
    """T_v(mu): x -> x + mu <x, v> v."""
    fld = space.field
    n = space.nvars
    geo = SymplecticSpace.__new__(SymplecticSpace)
    geo.m, geo.field, geo.dim = space.m, fld, n
    grad = geo.form_gradient(v)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = 1 if i == j else 0
            if v[i] and grad[j]:
                entry = fld.add(entry, fld.mul(mu_code, fld.mul(v[i], grad[j])))
            row.append(entry)
        rows.append(tuple(row))
    return GroupElement(space, tuple(rows))


def transvection_x(space: FunctionSpace, mu_code: int) -> GroupElement:
    """The map substituting x_1 -> x_1 + mu y_1 and fixing all other coordinates."""
    n = space.nvars
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rows[n - 1][0] = mu_code
    return GroupElement(space, tuple(tuple(r) for r in rows))


def transvection_y(space: FunctionSpace, mu_code: int) -> GroupElement:
    """The mirror map y_1 -> y_1 + mu x_1."""
    n = space.nvars
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rows[0][n - 1] = mu_code
    return GroupElement(space, tuple(tuple(r) for r in rows))


@lru_cache(maxsize=200_000)
def _linear_form_power(space, terms, e: int) -> FunctionOnV:
    """(sum_j c_j z_j)^e as a function; terms is ((code, var index), ...).

    Cached: the same substituted columns recur across every monomial an
    operator is applied to.  Results are treated as immutable.
    """
    fld = space.field
    if e == 0:
        return FunctionOnV.one(space)
    if len(terms) == 1:
        c, j = terms[0]
        exps = [0] * space.nvars
        exps[j] = e
        return FunctionOnV(space, {tuple(exps): fld.pow(c, e)})
    if len(terms) == 2:
        # binomial expansion; exponents e-k, k are both <= q-1 already
        (c1, j1), (c2, j2) = terms
        out = {}
        for k in range(e + 1):
            b = binom_mod_p(e, k, space.p)
            if not b:
                continue
            coeff = fld.mul(b, fld.mul(fld.pow(c1, e - k), fld.pow(c2, k)))
            if not coeff:
                continue
            exps = [0] * space.nvars
            exps[j1] = e - k
            exps[j2] = k
            key = tuple(exps)
            out[key] = fld.add(out.get(key, 0), coeff)
        return FunctionOnV(space, out)
    coeffs = {}
    for c, j in terms:
        exps = [0] * space.nvars
        exps[j] = 1
        coeffs[tuple(exps)] = c
    return FunctionOnV(space, coeffs) ** e


def act(g: GroupElement, f: FunctionOnV) -> FunctionOnV:
    """Coordinate substitution action; multiplicative: act(g*h, f) = act(g, act(h, f))."""
    if g.space != f.space:
        raise ContextMismatch("group element and function contexts differ")
    sp = f.space
    fld = sp.field
    n = sp.nvars
    mat = g.matrix
    # column i of the matrix is the linear form substituted for coordinate i
    columns = []
    for i in range(n):
        col = tuple((mat[j][i], j) for j in range(n) if mat[j][i])
        columns.append(col)
    identity_cols = [len(c) == 1 and c[0] == (1, i) for i, c in enumerate(columns)]
    out = FunctionOnV.zero(sp)
    for exps, coeff in f.coeffs.items():
        pieces = None
        plain = [0] * n
        for i, e in enumerate(exps):
            if not e:
                continue
            if identity_cols[i]:
                plain[i] = e
                continue
            piece = _linear_form_power(sp, columns[i], e)
            pieces = piece if pieces is None else pieces * piece
        term = FunctionOnV(sp, {tuple(plain): coeff})
        if pieces is not None:
            term = term * pieces
        out = out + term
    return out


# -- group ring elements --------------------------------------------------------


class GroupRingElement:
    """An element of the group ring kSp(V).

    Internally either a collected terms dictionary {GroupElement: code}, a
    lazy product of factors (rightmost applied first), or a linear
    combination [(code, element), ...].  `terms()` expands to the flat form;
    `apply` never expands, and memoizes per (x_1, y_1) exponent pair whenever
    every matrix involved touches only those coordinates.
    """

    def __init__(self, space, kind, terms=None, factors=None, parts=None):
        self.space = space
        self.kind = kind
        self._terms = terms
        self._factors = factors
        self._parts = parts
        self._pair_cache = {}
        self._xy_local = None

    # constructors ---------------------------------------------------------

    @staticmethod
    def from_terms(space, terms: dict) -> "GroupRingElement":
        return GroupRingElement(space, "terms", terms={g: c for g, c in terms.items() if c})

    @staticmethod
    def identity(space) -> "GroupRingElement":
        return GroupRingElement.from_terms(space, {GroupElement.identity(space): 1})

    @staticmethod
    def zero(space) -> "GroupRingElement":
        return GroupRingElement.from_terms(space, {})

    # algebra ----------------------------------------------------------------

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        if self.space != other.space:
            raise ContextMismatch("group ring elements from different contexts")
        left = self._factors if self.kind == "product" else (self,)
        right = other._factors if other.kind == "product" else (other,)
        return GroupRingElement(self.space, "product", factors=left + right)

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement(
            self.space, "lincomb", parts=((1, self), (1, other))
        )

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement(
            self.space, "lincomb", parts=((1, self), (self.space.field.neg(1), other))
        )

    def scaled(self, code: int) -> "GroupRingElement":
        return GroupRingElement(self.space, "lincomb", parts=((code, self),))

    # application -------------------------------------------------------------

    def is_xy_local(self) -> bool:
        if self._xy_local is None:
            if self.kind == "terms":
                self._xy_local = all(g.xy_block() is not None for g in self._terms)
            elif self.kind == "product":
                self._xy_local = all(f.is_xy_local() for f in self._factors)
            else:
                self._xy_local = all(op.is_xy_local() for _, op in self._parts)
        return self._xy_local

    def apply(self, f: FunctionOnV) -> FunctionOnV:
        if self.space != f.space:
            raise ContextMismatch("operator and function contexts differ")
        sp = self.space
        if not self.is_xy_local():
            return self._apply_raw(f)
        add, mul = sp.field.add, sp.field.mul
        out = {}
        for exps, coeff in f.coeffs.items():
            pair = (exps[0], exps[-1])
            cached = self._pair_cache.get(pair)
            if cached is None:
                mono = [0] * sp.nvars
                mono[0], mono[-1] = pair
                cached = self._apply_raw(FunctionOnV(sp, {tuple(mono): 1}))
                for e2 in cached.coeffs:
                    assert not any(e2[1:-1])
                self._pair_cache[pair] = cached
            for e2, c2 in cached.coeffs.items():
                key = (e2[0],) + exps[1:-1] + (e2[-1],)
                c = mul(coeff, c2)
                prev = out.get(key, 0)
                out[key] = add(prev, c)
        return FunctionOnV(sp, out)

    def _apply_raw(self, f: FunctionOnV) -> FunctionOnV:
        sp = self.space
        if self.kind == "terms":
            out = FunctionOnV.zero(sp)
            for g, c in self._terms.items():
                out = out + act(g, f).scale(c)
            return out
        if self.kind == "product":
            for fac in reversed(self._factors):
                f = fac.apply(f)
                if f.is_zero():
                    return f
            return f
        out = FunctionOnV.zero(sp)
        for c, op in self._parts:
            out = out + op.apply(f).scale(c)
        return out

    # expansion -----------------------------------------------------------------

    def terms(self, limit: int = 1 << 20) -> dict:
        """Collected {GroupElement: code} form; may be large for products."""
        fld = self.space.field
        if self.kind == "terms":
            return dict(self._terms)
        if self.kind == "product":
            out = {GroupElement.identity(self.space): 1}
            for fac in self._factors:
                fac_terms = fac.terms(limit)
                new = {}
                if len(out) * len(fac_terms) > limit:
                    raise RangeError("expansion exceeds limit")
                for g1, c1 in out.items():
                    for g2, c2 in fac_terms.items():
                        g = g1 * g2
                        c = fld.mul(c1, c2)
                        prev = new.get(g, 0)
                        new[g] = fld.add(prev, c)
                out = {g: c for g, c in new.items() if c}
            return out
        out = {}
        for c, op in self._parts:
            for g, c2 in op.terms(limit).items():
                prev = out.get(g, 0)
                out[g] = fld.add(prev, fld.mul(c, c2))
        return {g: c for g, c in out.items() if c}


def _shift_terms(space: FunctionSpace, ell: int, j: int, mirror: bool) -> GroupRingElement:
    fld = space.field
    make = transvection_y if mirror else transvection_x
    terms = {}
    exp = ell * space.p**j
    for mu in range(1, space.q):
        g = make(space, fld.inv(mu))
        terms[g] = fld.add(terms.get(g, 0), fld.pow(mu, exp))
    return GroupRingElement.from_terms(space, terms)


def shift_operator(space: FunctionSpace, ell: int, j: int) -> GroupRingElement:
    """g_ell(j) = sum over nonzero mu of mu^(ell p^j) (x_1 -> x_1 + mu^-1 y_1)."""
    if not 1 <= ell <= space.p - 1:
        raise RangeError(f"ell={ell} outside [1, {space.p - 1}]")
    if not 0 <= j <= space.t - 1:
        raise RangeError(f"j={j} outside [0, {space.t - 1}]")
    return _shift_terms(space, ell, j, mirror=False)


def shift_mirror(space: FunctionSpace, ell: int, j: int) -> GroupRingElement:
    """h_ell(j): the same sum built on y_1 -> y_1 + mu x_1."""
    if not 1 <= ell <= space.p - 1:
        raise RangeError(f"ell={ell} outside [1, {space.p - 1}]")
    if not 0 <= j <= space.t - 1:
        raise RangeError(f"j={j} outside [0, {space.t - 1}]")
    return _shift_terms(space, ell, j, mirror=True)


def shift_predicted(space: FunctionSpace, ell: int, j: int, exps) -> FunctionOnV:
    """Closed-form image of a basis monomial under g_ell(j).

    Zero when the j-th digit of the x_1 exponent is below ell, else
    -C(a_1j, ell) times the monomial with ell p^j moved from x_1 to y_1.
    The closed form is the t > 1 statement; it also holds at t = 1 except
    for ell = p - 1, where the defining sum picks up an extra term.
    """
    exps = tuple(exps)
    p, q = space.p, space.q
    a1 = exps[0]
    digit = (a1 // p**j) % p
    if digit < ell:
        return FunctionOnV.zero(space)
    coeff = (-binom_mod_p(digit, ell, p)) % p
    new = list(exps)
    new[0] = a1 - ell * p**j
    new[-1] = space.reduce_exp(exps[-1] + ell * p**j)
    return FunctionOnV(space, {tuple(new): coeff})


def digit_projector(space: FunctionSpace, alpha: int, beta: int, j: int) -> GroupRingElement:
    """g_{alpha,beta}(j): picks out basis monomials whose (x_1, y_1) exponents
    have j-th digits (alpha, beta) or the complementary (p-1-beta, p-1-alpha).

    Built recursively from shift-operator composites: the base case
    alpha + beta = p-1 is -C(p-1, beta)^{-1} g_beta h_{p-1} g_alpha, lower
    digit sums prepend the (1 - g_{gamma,delta}) annihilators, and sums above
    p-1 reduce to the complementary pair.

    The selection property holds exactly on every monomial whose x_1 and y_1
    exponents are below q-1 (digit carries included).  On top-exponent
    inputs the defining character sums cannot distinguish exponent 0 from
    exponent q-1 and the composite mis-selects; for the digit classes
    containing a pair with both entries in {0, p-1} no element of the
    transvection-plane algebra can do better (verified by exact linear
    algebra over the 81-monomial block at q = 9).  labchecks pins both the
    interior property and the boundary confinement.
    """
    p = space.p
    if not (0 <= alpha <= p - 1 and 0 <= beta <= p - 1):
        raise RangeError(f"digits ({alpha}, {beta}) outside [0, {p - 1}]")
    if not 0 <= j <= space.t - 1:
        raise RangeError(f"j={j} outside [0, {space.t - 1}]")
    key = (alpha, beta, j)
    cached = space._projector_cache.get(key)
    if cached is not None:
        return cached
    if alpha + beta > p - 1:
        op = digit_projector(space, p - 1 - beta, p - 1 - alpha, j)
    else:
        # -C(alpha+beta, beta)^{-1} g_beta h_{alpha+beta} g_alpha, with the
        # (1 - g_{gamma,delta}) annihilators applied first when alpha+beta < p-1
        fld = space.field
        core = (
            _shift_terms(space, beta, j, mirror=False)
            * _shift_terms(space, alpha + beta, j, mirror=True)
            * _shift_terms(space, alpha, j, mirror=False)
        )
        for s in range(alpha + beta + 1, p):
            for gamma in range(0, p):
                delta = s - gamma
                if not 0 <= delta <= p - 1:
                    continue
                core = core * (
                    GroupRingElement.identity(space)
                    - digit_projector(space, gamma, delta, j)
                )
        scalar = fld.neg(fld.inv(binom_mod_p(alpha + beta, beta, p)))
        op = core.scaled(scalar)
    space._projector_cache[key] = op
    return op


def digit_projector_selects(space: FunctionSpace, alpha: int, beta: int, j: int, exps) -> bool:
    """Whether the projector should return the monomial unchanged."""
    p = space.p
    a = (exps[0] // p**j) % p
    b = (exps[-1] // p**j) % p
    return (a, b) == (alpha, beta) or (a, b) == (p - 1 - beta, p - 1 - alpha)


# -- tau and the middle-degree split -------------------------------------------


def middle_monomials(m: int, p: int) -> list:
    """(alpha, beta) multi-index pairs of total degree m(p-1), entries <= p-1."""
    out = []
    for alpha in itertools.product(range(p), repeat=m):
        rest = m * (p - 1) - sum(alpha)
        if rest < 0 or rest > m * (p - 1):
            continue
        for beta in _compositions(rest, m, p - 1):
            out.append((alpha, beta))
    out.sort()
    return out


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int, cap: int) -> tuple:
    if parts == 0:
        return ((),) if total == 0 else ()
    out = []
    for first in range(min(cap, total) + 1):
        for rest in _compositions(total - first, parts - 1, cap):
            out.append((first,) + rest)
    return tuple(out)


def tau(m: int, p: int, element: dict) -> dict:
    """The involution X^a Y^b -> (-1)^|b| a! b! X^(bbar) Y^(abar) on S^{m(p-1)}.

    `element` maps (alpha, beta) pairs to integers mod p.
    """
    mid = m * (p - 1)
    out = {}
    for (alpha, beta), c in element.items():
        if len(alpha) != m or len(beta) != m:
            raise DegreeError("multi-indices must have length m")
        if any(not 0 <= a <= p - 1 for a in alpha + beta):
            raise DegreeError("digit entries must lie in [0, p-1]")
        if sum(alpha) + sum(beta) != mid:
            raise DegreeError(f"total degree must be {mid}")
        fact = 1
        for a in alpha:
            fact = fact * math.factorial(a) % p
        for b in beta:
            fact = fact * math.factorial(b) % p
        coeff = (-1) ** sum(beta) * fact * c % p
        key = (
            tuple(p - 1 - b for b in beta),
            tuple(p - 1 - a for a in alpha),
        )
        out[key] = (out.get(key, 0) + coeff) % p
    return {k: v for k, v in out.items() if v}


def tau_eigenspace_dims(m: int, p: int) -> tuple:
    """(dim of the (-1)^m eigenspace, dim of the (-1)^(m+1) eigenspace)."""
    from .ranks import rank_mod_p

    monos = middle_monomials(m, p)
    index = {mb: i for i, mb in enumerate(monos)}
    n = len(monos)
    mat = np.zeros((n, n), dtype=np.int64)
    for i, (alpha, beta) in enumerate(monos):
        img = tau(m, p, {(alpha, beta): 1})
        for key, c in img.items():
            mat[index[key], i] = c
    sign = (-1) ** m % p
    eye = np.eye(n, dtype=np.int64)
    plus = n - rank_mod_p((mat - sign * eye) % p, p)
    minus = n - rank_mod_p((mat + sign * eye) % p, p)
    return plus, minus


# -- symplectic basis functions --------------------------------------------------


@dataclass(frozen=True)
class SymplecticBasisFunction:
    """A product of per-digit factors f_0 f_1^p ... f_{t-1}^{p^{t-1}}.

    Digit descriptors: ('mono', exps) for a plain degree-lambda_j monomial;
    at the middle degree, ('diag', alpha) for x^alpha y^(alphabar) and
    ('plus'|'minus', alpha, beta) for the paired two-term combinations.
    """

    space: FunctionSpace
    digits: tuple
    stype: SignedHType

    def expand(self) -> FunctionOnV:
        sp = self.space
        fld = sp.field
        p = sp.p
        total = {(0,) * sp.nvars: 1}
        for j, digit in enumerate(self.digits):
            scale = p**j
            parts = []
            if digit[0] == "mono":
                parts.append((digit[1], 1))
            elif digit[0] == "diag":
                alpha = digit[1]
                abar = tuple(p - 1 - a for a in alpha)
                parts.append((sp.exponents(alpha, abar), 1))
            else:
                _, alpha, beta = digit
                parts.append((sp.exponents(alpha, beta), 1))
                c = (-1) ** (sum(beta) + sp.m)
                for a in alpha:
                    c = c * math.factorial(a)
                for b in beta:
                    c = c * math.factorial(b)
                c %= p
                if digit[0] == "minus":
                    c = (-c) % p
                bbar = tuple(p - 1 - b for b in beta)
                abar = tuple(p - 1 - a for a in alpha)
                parts.append((sp.exponents(bbar, abar), c))
            new = {}
            for e1, c1 in total.items():
                for e2, c2 in parts:
                    key = tuple(a + scale * b for a, b in zip(e1, e2))
                    new[key] = fld.mul(c1, c2)
            total = new
        return FunctionOnV(sp, total)

    @property
    def signature(self) -> frozenset:
        return self.stype.eps


def _mono_digit_options(space, lam_j):
    m, cap = space.m, space.p - 1
    out = [
        ("mono", space.exponents(alpha, beta))
        for s in range(min(lam_j, m * cap) + 1)
        for alpha in _compositions(s, m, cap)
        for beta in _compositions(lam_j - s, m, cap)
    ]
    out.sort()
    return out


def _digit_options(space, lam_j):
    p, m = space.p, space.m
    mid = m * (p - 1)
    if lam_j != mid:
        return _mono_digit_options(space, lam_j)
    out = []
    for alpha in itertools.product(range(p), repeat=m):
        out.append(("diag", alpha))
    for alpha, beta in middle_monomials(m, p):
        partner = (tuple(p - 1 - b for b in beta), tuple(p - 1 - a for a in alpha))
        if beta == tuple(p - 1 - a for a in alpha):
            continue  # diagonal, already listed
        if (alpha, beta) < partner:
            out.append(("plus", alpha, beta))
            out.append(("minus", alpha, beta))
    out.sort()
    return out


def symplectic_basis(space: FunctionSpace, lam) -> list:
    """All symplectic basis functions of type lambda, deterministic order."""
    lam = tuple(lam)
    cached = space._basis_cache.get(lam)
    if cached is not None:
        return cached
    hi = 2 * space.m * (space.p - 1)
    if len(lam) != space.t or any(not 0 <= l <= hi for l in lam):
        raise RangeError(f"bad type tuple {lam}")
    lt = type_of_lambda(space, lam)
    h = h_type_from_lambda(lt)
    js = h.j_set()
    options = [_digit_options(space, l) for l in lam]
    out = []
    for combo in itertools.product(*options):
        eps = frozenset(
            j for j in js if combo[j][0] in ("diag", "plus")
        )
        out.append(SymplecticBasisFunction(space, combo, SignedHType(h, eps)))
    space._basis_cache[lam] = out
    return out


def type_of_lambda(space: FunctionSpace, lam) -> LambdaType:
    """LambdaType carrier for a raw tuple (grading from the digit expansion)."""
    p, t, q = space.p, space.t, space.q
    total = sum(l * p**j for j, l in enumerate(lam))
    return LambdaType(space.m, p, t, tuple(lam), total % (q - 1))


def monomial_type(space: FunctionSpace, exps) -> tuple:
    return type_of(exps, space.m, space.p, space.t).lam


def char_function(space: FunctionSpace, sub: Subspace) -> FunctionOnV:
    """Indicator function of a subspace: product of (1 - form^(q-1)).

    The cutting linear forms are the RREF basis of the annihilator of the
    generator matrix under the standard dot product.
    """
    fld = space.field
    if sub.dim == 0:
        forms = [tuple(1 if k == i else 0 for k in range(space.nvars)) for i in range(space.nvars)]
    else:
        forms = [
            tuple(int(x) for x in row)
            for row in linalg.nullspace(fld, [list(r) for r in sub.rows], ncols=space.nvars)
        ]
    assert len(forms) + sub.dim == space.nvars
    out = FunctionOnV.one(space)
    for form in forms:
        lin = FunctionOnV(
            space,
            {
                tuple(1 if k == i else 0 for k in range(space.nvars)): c
                for i, c in enumerate(form)
                if c
            },
        )
        out = out * (FunctionOnV.one(space) - lin ** (space.q - 1))
    return out


def expand_in_symplectic_basis(f: FunctionOnV) -> list:
    """Exact expansion of f as [(code, SymplecticBasisFunction), ...]."""
    sp = f.space
    fld = sp.field
    by_type = {}
    for exps, c in f.coeffs.items():
        by_type.setdefault(monomial_type(sp, exps), {})[exps] = c
    out = []
    for lam, block in sorted(by_type.items()):
        basis = symplectic_basis(sp, lam)
        monos = sorted({e for b in basis for e in b.expand().coeffs})
        index = {e: i for i, e in enumerate(monos)}
        a = np.zeros((len(monos), len(basis)), dtype=np.uint8 if sp.q <= 255 else np.uint16)
        for kcol, b in enumerate(basis):
            for e, c in b.expand().coeffs.items():
                a[index[e], kcol] = c
        rhs = np.zeros(len(monos), dtype=a.dtype)
        for e, c in block.items():
            rhs[index[e]] = c
        sol = linalg.solve(fld, a, rhs)
        assert sol is not None, f"symplectic basis does not span type {lam}"
        for kcol, b in enumerate(basis):
            if sol[kcol]:
                out.append((int(sol[kcol]), b))
    return out


def signed_support(expansion) -> list:
    seen = {}
    for _, b in expansion:
        seen[b.stype.key()] = b.stype
    return [seen[k] for k in sorted(seen)]


def maximal_signed_types(types) -> list:
    out = []
    for a in types:
        if not any(a is not b and signed_leq(a, b) for b in types):
            out.append(a)
    return out
