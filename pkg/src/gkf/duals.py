"""Dual polynomial generators z_A, wedge cochains, torus weights and the
infinitesimal sp(2n) action.

Conventions (fixed once, everything downstream depends on them):

* coordinates x_1..x_{2n} with Poisson pairing {x_i, x_{2n+1-i}} = +1 for
  i <= n; write ibar = 2n+1-i;
* z_A is dual to the divided-power monomial x^A / A!, so all structure
  constants of the action are small integers;
* the torus weight of z_A is (a_1 - a_{2n}, a_2 - a_{2n-1}, ..., a_n - a_{n+1});
* a root vector acts on cochains by the dual of -{J(xi), .}, extended over
  wedge products as a derivation of degree 0; "raising" means the torus
  weight of every output term shifts by exactly +root.

With the pairing above, the quadratic whose dual action raises by a root
involves the barred coordinates (e.g. 2e_i comes from x_ibar^2/2); the signs
of the lowering quadratics are chosen so each (raising, lowering) pair
closes into an sl2 triple whose commutator acts by the pairing of the
weight with the coroot.
"""

from functools import lru_cache
from itertools import combinations
from math import comb
from typing import NamedTuple

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q


# ---------------------------------------------------------------------------
# monomial bases


@lru_cache(maxsize=None)
def monomials(n: int, q: int):
    """All exponent vectors of degree q in 2n variables, lex ascending.

    The returned tuples are the canonical interned objects: every wedge
    monomial in the package references these.
    """
    out = []

    def rec(prefix, remaining):
        if len(prefix) == 2 * n - 1:
            out.append(tuple(prefix) + (remaining,))
            return
        for a in range(remaining + 1):
            rec(prefix + [a], remaining - a)

    rec([], q)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, q: int):
    return {A: i for i, A in enumerate(monomials(n, q))}


def intern_mono(n: int, A):
    """Replace an exponent tuple by its canonical interned object."""
    A = tuple(A)
    q = sum(A)
    return monomials(n, q)[monomial_index(n, q)[A]]


def mono_weight(A, n: int):
    """Torus weight (a_1 - a_{2n}, ..., a_n - a_{n+1}) of z_A."""
    return tuple(A[i] - A[2 * n - 1 - i] for i in range(n))


@lru_cache(maxsize=None)
def weights_table(n: int, q: int):
    return tuple(mono_weight(A, n) for A in monomials(n, q))


# ---------------------------------------------------------------------------
# wedge monomials and vectors


def wedge_key(A):
    return (sum(A), A)


def wedge_canonicalize(factors):
    """Sort factors into canonical (degree, lex) order.

    Returns (sorted_tuple, sign); sign is 0 when a factor repeats.
    """
    fs = list(factors)
    sign = 1
    # insertion sort; factor lists are short
    for i in range(1, len(fs)):
        x = fs[i]
        kx = wedge_key(x)
        j = i - 1
        while j >= 0 and wedge_key(fs[j]) > kx:
            fs[j + 1] = fs[j]
            j -= 1
            sign = -sign
        fs[j + 1] = x
    for a, b in zip(fs, fs[1:]):
        if a == b:
            return None, 0
    return tuple(fs), sign


def torus_weight(factors, n: int):
    """Componentwise sum of the factors' torus weights."""
    w = [0] * n
    for A in factors:
        for i in range(n):
            w[i] += A[i] - A[2 * n - 1 - i]
    return tuple(w)


def gkf_weight(factors):
    """Sum over factors of (polynomial degree - 2)."""
    return sum(sum(A) - 2 for A in factors)


class WedgeVector:
    """Sparse exact-rational combination of canonical wedge monomials.

    Keys are tuples of exponent tuples in canonical ascending order
    (degree-major, then lex); zero coefficients are never stored.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = {}
        for mono, coeff in dict(terms or {}).items():
            if coeff:
                self.terms[mono] = self.terms.get(mono, 0) + coeff
        for mono in [m for m, c in self.terms.items() if not c]:
            del self.terms[mono]

    @classmethod
    def from_factors(cls, n, factors, coeff=1):
        mono, sign = wedge_canonicalize([intern_mono(n, A) for A in factors])
        if sign == 0 or not coeff:
            return cls(n)
        return cls(n, {mono: Q(coeff) * sign})

    def add_term(self, mono, coeff):
        c = self.terms.get(mono, 0) + coeff
        if c:
            self.terms[mono] = c
        elif mono in self.terms:
            del self.terms[mono]

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        out = WedgeVector(self.n, self.terms)
        for mono, c in other.terms.items():
            out.add_term(mono, c)
        return out

    def __sub__(self, other):
        out = WedgeVector(self.n, self.terms)
        for mono, c in other.terms.items():
            out.add_term(mono, -c)
        return out

    def __mul__(self, scalar):
        if not scalar:
            return WedgeVector(self.n)
        return WedgeVector(self.n, {m: c * scalar for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, WedgeVector)
            and self.n == other.n
            and self.terms == other.terms
        )

    def homogeneous_weight(self):
        """GKF weight if all terms agree, else raises."""
        ws = {gkf_weight(m) for m in self.terms}
        if len(ws) > 1:
            raise ValueError("inhomogeneous wedge vector")
        return ws.pop() if ws else None

    def type_signature(self):
        """Degree multiset of each term; must be constant on homogeneous cochains."""
        return {tuple(sorted(sum(A) for A in m)) for m in self.terms}

    def to_text(self) -> str:
        """Term list like ``-1/2 w(100101,000102,202000)``, one term per line
        in canonical monomial order."""
        lines = []
        for mono in sorted(self.terms, key=lambda m: tuple(wedge_key(A) for A in m)):
            c = self.terms[mono]
            body = ",".join("".join(str(a) for a in A) for A in mono)
            lines.append(f"{c} w({body})")
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str, n: int) -> "WedgeVector":
        out = cls(n)
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            coeff_str, _, body = line.partition(" w(")
            body = body.rstrip(")")
            num, _, den = coeff_str.partition("/")
            coeff = Q(int(num), int(den)) if den else Q(int(num))
            factors = tuple(
                intern_mono(n, tuple(int(ch) for ch in tok))
                for tok in body.split(",")
            )
            out.add_term(factors, coeff)
        return out

    def __repr__(self):
        k = len(self.terms)
        return f"WedgeVector(n={self.n}, {k} term{'s' if k != 1 else ''})"


# ---------------------------------------------------------------------------
# polynomials in the plain monomial basis and the Poisson bracket


def poisson_bracket(f: dict, g: dict, n: int) -> dict:
    """{f,g} = sum_i (df/dx_i dg/dx_ibar - df/dx_ibar dg/dx_i).

    Polynomials are dicts exponent-tuple -> coefficient in the plain basis.
    """
    out = {}
    for A, ca in f.items():
        for B, cb in g.items():
            for i in range(2 * n):
                ib = 2 * n - 1 - i
                sgn = 1 if i < n else -1
                if A[i] == 0 or B[ib] == 0:
                    continue
                coeff = sgn * ca * cb * A[i] * B[ib]
                C = list(A)
                C[i] -= 1
                D = list(B)
                D[ib] -= 1
                E = tuple(x + y for x, y in zip(C, D))
                out[E] = out.get(E, 0) + coeff
    return {A: c for A, c in out.items() if c}


# ---------------------------------------------------------------------------
# roots of sp(2n) and their momentum quadratics


class RootVector(NamedTuple):
    """A root vector of sp(2n): kind in {"diff","sum","long"} for
    e_i - e_j, e_i + e_j (i<j) and 2e_i; raising=False is the opposite root."""

    kind: str
    i: int
    j: int
    raising: bool

    def root(self, n: int):
        """The root as an integer n-vector (positive root; the lowering
        vector shifts weights by its negative)."""
        w = [0] * n
        if self.kind == "diff":
            w[self.i - 1] = 1
            w[self.j - 1] = -1
        elif self.kind == "sum":
            w[self.i - 1] = 1
            w[self.j - 1] = 1
        else:
            w[self.i - 1] = 2
        return tuple(w)

    def shift(self, n: int):
        """Weight shift applied by this vector's action."""
        r = self.root(n)
        return r if self.raising else tuple(-x for x in r)


def raising_roots(n: int):
    """The n^2 positive-root vectors spanning the maximal unipotent algebra."""
    out = [RootVector("diff", i, j, True) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    out += [RootVector("sum", i, j, True) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    out += [RootVector("long", i, i, True) for i in range(1, n + 1)]
    return tuple(out)


def lowering_roots(n: int):
    return tuple(r._replace(raising=False) for r in raising_roots(n))


def simple_roots(n: int):
    """e_1-e_2, ..., e_{n-1}-e_n, 2e_n: they generate the unipotent algebra,
    so their kernels already cut out the maximal vectors."""
    out = [RootVector("diff", i, i + 1, True) for i in range(1, n)]
    out.append(RootVector("long", n, n, True))
    return tuple(out)


def _mono1(idx, n):
    e = [0] * (2 * n)
    e[idx - 1] = 1
    return tuple(e)


def _mono2(u, v, n):
    e = [0] * (2 * n)
    e[u - 1] += 1
    e[v - 1] += 1
    return tuple(e)


def momentum_quadratic(rho: RootVector, n: int) -> dict:
    """The quadratic polynomial whose dual Hamiltonian action realizes rho.

    Returned in the plain monomial basis.  Raising vectors are built from
    barred coordinates under this pairing; lowering ones carry the signs
    that make [raise, lower] act by the coroot pairing.
    """
    i, j = rho.i, rho.j
    ib, jb = 2 * n + 1 - i, 2 * n + 1 - j
    if rho.raising:
        if rho.kind == "diff":
            return {_mono2(j, ib, n): Q(1)}
        if rho.kind == "sum":
            return {_mono2(ib, jb, n): Q(1)}
        return {_mono2(ib, ib, n): Q(1, 2)}
    if rho.kind == "diff":
        return {_mono2(i, jb, n): Q(1)}
    if rho.kind == "sum":
        return {_mono2(i, j, n): Q(-1)}
    return {_mono2(i, i, n): Q(-1, 2)}


def torus_momentum(i: int, n: int) -> dict:
    """Quadratic x_i x_ibar; its dual action multiplies z_A by a_i - a_ibar."""
    return {_mono2(i, 2 * n + 1 - i, n): Q(1)}


# ---------------------------------------------------------------------------
# the action on single generators and on wedge vectors

# dual of -{x_u x_v, .} on z_A:
#   -s(u) a_v z_{A - e_v + e_ubar} - s(v) a_u z_{A - e_u + e_vbar}
# (x_u^2/2 keeps only the first term with v = u); s(u) = +1 for u <= n.


def _pair_terms(rho: RootVector, n: int):
    """The momentum of rho as (coeff, u, v) factor pairs (v == u: x_u^2/2)."""
    i, j = rho.i, rho.j
    ib, jb = 2 * n + 1 - i, 2 * n + 1 - j
    if rho.raising:
        if rho.kind == "diff":
            return ((1, j, ib),)
        if rho.kind == "sum":
            return ((1, ib, jb),)
        return ((1, ib, ib),)
    if rho.kind == "diff":
        return ((1, i, jb),)
    if rho.kind == "sum":
        return ((-1, i, j),)
    return ((-1, i, i),)


@lru_cache(maxsize=None)
def generator_action(n: int, q: int, rho: RootVector):
    """Table of the rho-action on the degree-q dual generators.

    Entry k lists (target_index_in_degree_q, integer_coefficient) pairs for
    the image of monomials(n, q)[k].
    """
    monos = monomials(n, q)
    index = monomial_index(n, q)
    table = []
    for A in monos:
        acc = {}
        for c, u, v in _pair_terms(rho, n):
            ub, vb = 2 * n + 1 - u, 2 * n + 1 - v
            su = 1 if u <= n else -1
            sv = 1 if v <= n else -1
            if v == u:  # x_u^2 / 2
                if A[u - 1]:
                    B = list(A)
                    B[u - 1] -= 1
                    B[ub - 1] += 1
                    t = index[tuple(B)]
                    acc[t] = acc.get(t, 0) - c * su * A[u - 1]
            else:
                if A[v - 1]:
                    B = list(A)
                    B[v - 1] -= 1
                    B[ub - 1] += 1
                    t = index[tuple(B)]
                    acc[t] = acc.get(t, 0) - c * su * A[v - 1]
                if A[u - 1]:
                    B = list(A)
                    B[u - 1] -= 1
                    B[vb - 1] += 1
                    t = index[tuple(B)]
                    acc[t] = acc.get(t, 0) - c * sv * A[u - 1]
        table.append(tuple((t, cf) for t, cf in sorted(acc.items()) if cf))
    return tuple(table)


def root_action_mono(rho: RootVector, factors, n: int):
    """Derivation action on one canonical wedge monomial.

    Yields (canonical_monomial, integer_coefficient) contributions.
    """
    out = []
    for k, A in enumerate(factors):
        q = sum(A)
        monos_q = monomials(n, q)
        for t, cf in generator_action(n, q, rho)[monomial_index(n, q)[A]]:
            target = monos_q[t]
            mono, sign = wedge_canonicalize(
                factors[:k] + (target,) + factors[k + 1:]
            )
            if sign:
                out.append((mono, sign * cf))
    return out


def root_action(rho: RootVector, v: WedgeVector) -> WedgeVector:
    """Extend the generator action over wedges; shifts every term's torus
    weight by exactly rho.shift(n)."""
    if len(v.type_signature()) > 1:
        raise ValueError("root_action requires a homogeneous cochain type")
    out = WedgeVector(v.n)
    for factors, coeff in v.terms.items():
        for mono, cf in root_action_mono(rho, factors, v.n):
            out.add_term(mono, coeff * cf)
    return out


# ---------------------------------------------------------------------------
# structure constants of the coboundary


@lru_cache(maxsize=None)
def bracket_pair_table(n: int, b: int, c: int):
    """For each degree-(b+c-2) generator index a: the list of
    ((B_idx, C_idx), coeff) with coeff = <z_A, {x^B/B!, x^C/C!}>, over
    canonical pairs (B in S_b, C in S_c; B < C lexicographically when b == c).

    The Leibniz product of divided powers makes coeff a product of
    binomials: {x^B/B!, x^C/C!} = sum_u s(u) (B-e_u  multi-choose) ... ;
    only the aggregate integer matters here.
    """
    assert 3 <= b <= c
    monos_b = monomials(n, b)
    monos_c = monomials(n, c)
    index_a = monomial_index(n, b + c - 2)
    table = {}
    for bi, B in enumerate(monos_b):
        cj_start = bi + 1 if b == c else 0
        for cj in range(cj_start, len(monos_c)):
            C = monos_c[cj]
            acc = {}
            for u in range(1, 2 * n + 1):
                ub = 2 * n + 1 - u
                if B[u - 1] == 0 or C[ub - 1] == 0:
                    continue
                sgn = 1 if u <= n else -1
                P = list(B)
                P[u - 1] -= 1
                Qv = list(C)
                Qv[ub - 1] -= 1
                A = tuple(p + q for p, q in zip(P, Qv))
                coeff = sgn
                for p, q in zip(P, Qv):
                    if p and q:
                        coeff *= comb(p + q, p)
                acc[A] = acc.get(A, 0) + coeff
            for A, coeff in acc.items():
                if coeff:
                    table.setdefault(index_a[A], []).append(((bi, cj), coeff))
    return {a: tuple(v) for a, v in table.items()}


def coboundary_splits(h: int):
    """Degree pairs (b, c) with b + c = h + 2 and 3 <= b <= c."""
    return [(b, h + 2 - b) for b in range(3, h + 2 - 2) if b <= h + 2 - b]


def coboundary_generator(A, n: int):
    """d z_A as (factors, coeff) contributions: the transpose of the Poisson
    bracket on each admissible degree splitting.

    Normalization: d sigma (f, g) = -sigma({f, g}) summed over unordered
    generator pairs (equivalently -1/2 over ordered pairs); the overall
    scale does not affect ranks or d^2 = 0.
    """
    h = sum(A)
    out = []
    for b, c in coboundary_splits(h):
        monos_b = monomials(n, b)
        monos_c = monomials(n, c)
        table = bracket_pair_table(n, b, c)
        a_idx = monomial_index(n, h)[A]
        for (bi, cj), coeff in table.get(a_idx, ()):
            out.append(((monos_b[bi], monos_c[cj]), -coeff))
    return out
