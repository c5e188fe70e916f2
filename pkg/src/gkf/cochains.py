"""Weight-graded relative cochain complexes, the coboundary and Betti numbers.

A degree-m, weight-w cochain type is a solution of

    sum_{j>=3} k_j = m,   sum_{j>=3} k_j (j - 2) = w,

realized as the block space Lambda^{k_3} S_3 (x) Lambda^{k_4} S_4 (x) ...;
the relative cochain space is its fully sp-invariant part, built from the
weight-zero maximal vectors of each type.  The coboundary transposes the
Poisson bracket on generators and extends as a degree-1 skew derivation;
it preserves the weight and commutes with the sp action, so ranks of its
restrictions to the invariant bases give the Betti numbers

    b^j = dim C^j - rank d_j - rank d_{j-1}.
"""

from functools import lru_cache

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

from . import linalg, split
from .crystal import IrrepDecomposition, tensor_decompose, trivial_multiplicity
from .duals import WedgeVector, coboundary_generator, wedge_canonicalize
from .split import Block, DimensionAuditError, make_spec
from .util import progress


def enumerate_cochain_types(w: int, m: int):
    """All (j, k_j) multiplicity profiles of degree m and weight w.

    Odd weight short-circuits to nothing (minus the identity acts by
    (-1)^w on the weight-w part, so odd-weight invariants vanish).
    """
    if w % 2 or m < 1 or w < m:
        return []
    out = []

    def rec(j, left_m, left_w, acc):
        if left_m == 0:
            if left_w == 0:
                out.append(tuple(acc))
            return
        if left_w < left_m:  # each further factor weighs at least 1
            return
        if j - 2 > left_w:
            return
        max_k = min(left_m, left_w // (j - 2))
        for k in range(max_k, -1, -1):
            if k:
                acc.append((j, k))
            rec(j + 1, left_m - k, left_w - k * (j - 2), acc)
            if k:
                acc.pop()

    rec(3, m, w, [])
    return sorted(out)


def type_to_spec(ctype):
    return make_spec([Block(j, k) for j, k in ctype])


def max_degree(w: int) -> int:
    """Cochain degree cannot exceed the weight (every factor weighs >= 1)."""
    return w


# ---------------------------------------------------------------------------
# dimensions without bases (crystal-side counting wherever possible)


@lru_cache(maxsize=None)
def _block_decomposition(n: int, block: Block) -> IrrepDecomposition:
    if block.p == 1:
        return IrrepDecomposition(n, {(block.q,) + (0,) * (n - 1): 1})
    return split.decompose_space(n, (block,))


def _pair_mult_map(n, left: IrrepDecomposition, right: IrrepDecomposition):
    out = IrrepDecomposition(n)
    for lam, m1 in left.entries.items():
        for mu, m2 in right.entries.items():
            for nu, m in tensor_decompose(n, lam, mu).entries.items():
                out.add(nu, m1 * m2 * m)
    return out


def trivial_dim(n: int, spec) -> int:
    """Dimension of the fully invariant part of a block product.

    Single wedge blocks need one weight-zero system; products use the
    multiplicity pairing, peeling single S_q factors through the
    [q,0,...,0]-multiplicity of the rest (and never building the product).
    """
    spec = make_spec(spec)
    if len(spec) == 1:
        b = spec[0]
        if b.p == 1:
            return 0  # an irreducible V_[q,0,..] is never trivial for q >= 1
        return len(split.maximal_vectors(n, spec, (0,) * n))
    last = spec[-1]
    prefix = spec[:-1]
    if last.p == 1:
        lam = (last.q,) + (0,) * (n - 1)
        return _multiplicity_in(n, prefix, lam)
    left = _product_decomposition(n, prefix)
    right = _block_decomposition(n, last)
    return trivial_multiplicity(left, right)


def _multiplicity_in(n, spec, lam) -> int:
    """Multiplicity of V_lam in a block product, cheapest available route."""
    spec = make_spec(spec)
    if len(spec) == 1:
        b = spec[0]
        if b.p == 1:
            return 1 if lam == (b.q,) + (0,) * (n - 1) else 0
        return len(split.maximal_vectors(n, spec, lam))
    if all(b.p == 1 for b in spec):
        return _product_decomposition(n, spec).mult(lam)
    return len(split.maximal_vectors(n, spec, lam))


@lru_cache(maxsize=None)
def _product_decomposition(n, spec) -> IrrepDecomposition:
    spec = make_spec(spec)
    out = _block_decomposition(n, spec[0])
    for b in spec[1:]:
        out = _pair_mult_map(n, out, _block_decomposition(n, b))
    return out


def cochain_dim(n: int, w: int, m: int) -> int:
    return sum(trivial_dim(n, type_to_spec(t)) for t in enumerate_cochain_types(w, m))


def cochain_dims(n: int, w: int, up_to_degree=None):
    """dim C^m for m = 1..up_to_degree (default: the weight)."""
    limit = up_to_degree if up_to_degree is not None else max_degree(w)
    return [cochain_dim(n, w, m) for m in range(1, limit + 1)]


# ---------------------------------------------------------------------------
# cochain spaces with bases


class CochainSpace:
    """Invariant basis of one (degree, weight) slot, kept per cochain type."""

    def __init__(self, n, w, m, summands):
        self.n = n
        self.weight = w
        self.degree = m
        self.summands = summands  # list of (ctype, spec, internal vectors)

    @property
    def dim(self) -> int:
        return sum(len(vs) for _, _, vs in self.summands)

    def basis_vectors(self):
        """Public WedgeVector basis, summands in type order."""
        out = []
        for _, spec, vs in self.summands:
            for v in vs:
                out.append(split.to_wedge_vector(self.n, spec, v))
        return out


def build_relative_cochain_space(n: int, w: int, m: int, cache=None) -> CochainSpace:
    """Invariant bases for every type of the slot; dimensions are then
    cross-checked against the counting route (both must agree)."""
    key = f"cochain_v1_n{n}_w{w}_m{m}"
    if cache is not None:
        cached = cache.get_json(key)
        if cached is not None:
            return _cochain_space_from_payload(n, w, m, cached)
    summands = []
    for ctype in enumerate_cochain_types(w, m):
        spec = type_to_spec(ctype)
        progress(f"building invariants of {split.format_space_spec(spec)}")
        vectors = split.maximal_vectors(n, spec, (0,) * n)
        counted = trivial_dim(n, spec)
        if counted != len(vectors):
            raise DimensionAuditError(
                f"{split.format_space_spec(spec)}: counting route gives "
                f"{counted}, basis route gives {len(vectors)}"
            )
        summands.append((ctype, spec, vectors))
    space = CochainSpace(n, w, m, summands)
    if cache is not None:
        cache.put_json(key, _cochain_space_payload(space))
    return space


def _cochain_space_payload(space: CochainSpace):
    return {
        "summands": [
            {
                "type": [list(jk) for jk in ctype],
                "vectors": [
                    split.to_wedge_vector(space.n, spec, v).to_text() for v in vs
                ],
            }
            for ctype, spec, vs in space.summands
        ]
    }


def _cochain_space_from_payload(n, w, m, payload) -> CochainSpace:
    summands = []
    for item in payload["summands"]:
        ctype = tuple(tuple(jk) for jk in item["type"])
        spec = type_to_spec(ctype)
        vectors = [
            _internal_from_wedge(n, spec, WedgeVector.from_text(t, n))
            for t in item["vectors"]
        ]
        summands.append((ctype, spec, vectors))
    return CochainSpace(n, w, m, summands)


def _internal_from_wedge(n, spec, wv: WedgeVector):
    from .duals import monomial_index

    out = {}
    for factors, coeff in wv.terms.items():
        blocks = []
        pos = 0
        for b in spec:
            idxs = tuple(
                monomial_index(n, b.q)[A] for A in factors[pos:pos + b.p]
            )
            blocks.append(idxs)
            pos += b.p
        out[tuple(blocks)] = coeff
    return out


# ---------------------------------------------------------------------------
# the coboundary


@lru_cache(maxsize=None)
def _dz(n: int, A):
    return tuple(coboundary_generator(A, n))


def coboundary(v: WedgeVector) -> WedgeVector:
    """Skew-derivation extension of the transposed Poisson bracket.

    Preserves the GKF weight and commutes with the sp action, so invariant
    cochains map to invariant cochains of one higher degree.
    """
    n = v.n
    out = WedgeVector(n)
    for factors, coeff in v.terms.items():
        for k, A in enumerate(factors):
            sign = -1 if k % 2 else 1
            pre, post = factors[:k], factors[k + 1:]
            for (b_mono, c_mono), cf in _dz(n, A):
                mono, s = wedge_canonicalize(pre + (b_mono, c_mono) + post)
                if s:
                    out.add_term(mono, coeff * (sign * s * cf))
    return out


def coboundary_matrix(src: CochainSpace, dst: CochainSpace):
    """Coordinates of d(src basis) in the dst basis, as a dim(dst) x dim(src)
    exact matrix.  Raises if an image escapes the span: that would mean the
    assembled bases are wrong, since d preserves full invariance."""
    if dst.degree != src.degree + 1 or dst.weight != src.weight:
        raise ValueError("coboundary_matrix needs consecutive degrees, equal weight")
    dst_basis = [w.terms for w in dst.basis_vectors()]
    triplets = []
    for j, v in enumerate(src.basis_vectors()):
        image = coboundary(v)
        if image.is_zero():
            continue
        coords = linalg.solve_in_span(dst_basis, image.terms)
        if coords is None:
            raise DimensionAuditError(
                "coboundary image escapes the target invariant basis"
            )
        for i, c in enumerate(coords):
            if c:
                triplets.append((i, j, c))
    return linalg.SparseRationalMatrix.from_triplets(dst.dim, src.dim, triplets)


def coboundary_rank(src: CochainSpace) -> int:
    """rank of d on the slot, computed from raw images (no target basis)."""
    images = [coboundary(v).terms for v in src.basis_vectors()]
    return linalg.rank_of_vectors(images)


# ---------------------------------------------------------------------------
# Betti numbers


def betti_numbers(n: int, w: int, up_to_degree=None, strict_grading=False,
                  cache=None):
    """b^0..b^limit for the weight-w complex.

    b^0 covers the constants (the complex proper starts in degree 1); with
    strict_grading the degree-0 slot of a positive weight is empty instead.
    For w = 6 the degree-6 slot needs the large-scale basis, so callers can
    stop at up_to_degree = 5 and still get every lower Betti number right:
    rank d_5 only needs the degree-5 images.
    """
    if w % 2:
        limit = up_to_degree if up_to_degree is not None else 0
        return [0 if strict_grading else 1] + [0] * limit
    m_max = max_degree(w)
    limit = up_to_degree if up_to_degree is not None else m_max
    limit = min(limit, m_max)
    spaces = {m: build_relative_cochain_space(n, w, m, cache=cache)
              for m in range(1, limit + 1)}
    ranks = {0: 0}
    for m in range(1, limit + 1):
        src = spaces[m]
        if src.dim == 0:
            ranks[m] = 0
            continue
        if m + 1 <= limit:
            mat = coboundary_matrix(src, spaces[m + 1])
            ranks[m] = linalg.rank(mat)
        elif m + 1 > m_max or cochain_dim(n, w, m + 1) == 0:
            # zero target space: d vanishes on invariants
            _check_images_vanish(src)
            ranks[m] = 0
        else:
            ranks[m] = coboundary_rank(src)
    out = [0 if strict_grading else 1]
    for m in range(1, limit + 1):
        out.append(spaces[m].dim - ranks[m] - ranks[m - 1])
    return out


def _check_images_vanish(space: CochainSpace):
    for v in space.basis_vectors():
        if not coboundary(v).is_zero():
            raise DimensionAuditError(
                "coboundary image lands in a slot of dimension zero"
            )


def euler_characteristic(n: int, w: int, cache=None) -> int:
    """Alternating sum over positive degrees of the cochain dimensions
    (equivalently of the Betti numbers)."""
    dims = cochain_dims(n, w)
    return sum((-1) ** m * d for m, d in enumerate(dims, start=1))
