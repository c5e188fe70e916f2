"""Maximal-vector search and irreducible decomposition of wedge/tensor blocks.

A SpaceSpec is a product of blocks Lambda^p S_q (tensor across distinct
degrees q, alternating within a block).  Everything here works on an
internal monomial encoding: a product monomial is a tuple holding, per
block, a strictly increasing tuple of indices into the degree-q generator
list.  The torus grading makes each candidate highest weight an independent
linear system: a basis of the weight subspace, one equation per raising
root per reachable target monomial, solved exactly by gkf.linalg; the
number of solutions is the multiplicity of V_lambda.

For the trivial target weight on a multi-block space the search peels off
the last block: maximal vectors of the prefix at the matching highest
weight, the lowering orbit of each (an explicit irreducible copy), and a
small invariance system on the product of the two copies.  This reproduces
the direct answer while avoiding the weight-zero monomial basis of the full
product, whose size is what actually hurts.
"""

from bisect import bisect_left
from functools import lru_cache
from math import comb
from typing import NamedTuple

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

from . import linalg
from .crystal import IrrepDecomposition, tensor_support_upper_bound
from .duals import (
    WedgeVector,
    generator_action,
    lowering_roots,
    monomials,
    raising_roots,
    weights_table,
)
from .partitions import poly_dim, weyl_dim
from .util import progress


class Block(NamedTuple):
    q: int       # polynomial degree of the generators
    p: int       # exterior (or symmetric) power
    sym: bool = False


class DimensionAuditError(RuntimeError):
    """A decomposition failed its dimension bookkeeping; results untrusted."""


def make_spec(blocks):
    """Canonicalize: merge equal degrees, sort ascending, validate."""
    acc = {}
    for b in blocks:
        b = Block(*b)
        if b.q < 1 or b.p < 1:
            raise ValueError(f"bad block {b}")
        key = (b.q, b.sym)
        acc[key] = acc.get(key, 0) + b.p
    return tuple(Block(q, p, sym) for (q, sym), p in sorted(acc.items()))


def parse_space_spec(text: str):
    """Grammar: "L<p> S<q> [* L<p> S<q>]..."; a bare "S<q>" means L1."""
    blocks = []
    for part in text.split("*"):
        toks = part.replace("L", " L").replace("S", " S").split()
        p, q = 1, None
        for tok in toks:
            if tok.startswith("L"):
                p = int(tok[1:])
            elif tok.startswith("S"):
                q = int(tok[1:])
            else:
                raise ValueError(f"cannot parse space spec part: {part!r}")
        if q is None:
            raise ValueError(f"missing S<q> in space spec part: {part!r}")
        blocks.append(Block(q, p))
    return make_spec(blocks)


def format_space_spec(spec) -> str:
    return " * ".join(f"L{b.p} S{b.q}" for b in spec)


def total_dim(n: int, spec) -> int:
    dim = 1
    for b in spec:
        d = poly_dim(n, b.q)
        dim *= comb(d + b.p - 1, b.p) if b.sym else comb(d, b.p)
    return dim


# ---------------------------------------------------------------------------
# weight combinatorics


def _wsum(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _wneg(a):
    return tuple(-x for x in a)


@lru_cache(maxsize=None)
def block_weight_dims(n: int, block: Block) -> dict:
    """Weight -> dimension of Lambda^p S_q (or Sym^p S_q), by knapsack DP."""
    ws = weights_table(n, block.q)
    zero = (0,) * n
    layers = [{zero: 1}] + [dict() for _ in range(block.p)]
    for w in ws:
        ks = range(1, block.p + 1) if block.sym else range(block.p, 0, -1)
        for k in ks:
            dst = layers[k]
            for tw, m in list(layers[k - 1].items()):
                key = _wsum(tw, w)
                dst[key] = dst.get(key, 0) + m
    return dict(layers[block.p])


@lru_cache(maxsize=None)
def space_weight_dims(n: int, spec) -> dict:
    out = {(0,) * n: 1}
    for b in spec:
        nxt = {}
        bd = block_weight_dims(n, b)
        for w1, m1 in out.items():
            for w2, m2 in bd.items():
                key = _wsum(w1, w2)
                nxt[key] = nxt.get(key, 0) + m1 * m2
        out = nxt
    return out


_FULL_ENUM_LIMIT = 600_000


@lru_cache(maxsize=None)
def _block_monomials_by_weight(n: int, block: Block):
    """Full grouped enumeration, for blocks of moderate total dimension."""
    ws = weights_table(n, block.q)
    out = {}

    def rec(start, left, chosen, wacc):
        if left == 0:
            out.setdefault(wacc, []).append(tuple(chosen))
            return
        stop = len(ws) if block.sym else len(ws) - left + 1
        for i in range(start, stop):
            chosen.append(i)
            rec(i if block.sym else i + 1, left - 1, chosen, _wsum(wacc, ws[i]))
            chosen.pop()

    rec(0, block.p, [], (0,) * n)
    return out


def _block_monomials_at(n: int, block: Block, target):
    """Index tuples of the block with total weight ``target``."""
    if total_dim(n, (block,)) <= _FULL_ENUM_LIMIT:
        return _block_monomials_by_weight(n, block).get(tuple(target), [])
    return _block_dfs(n, block, tuple(target))


def _block_dfs(n: int, block: Block, target):
    """Targeted DFS with per-coordinate suffix bounds (large wedge blocks)."""
    ws = weights_table(n, block.q)
    d, p = len(ws), block.p
    big = 10 ** 9
    suf_min = [[[0] * n for _ in range(p + 1)] for _ in range(d + 1)]
    suf_max = [[[0] * n for _ in range(p + 1)] for _ in range(d + 1)]
    for c in range(n):
        col = [w[c] for w in ws]
        for i in range(d + 1):
            tail = sorted(col[i:])
            for r in range(1, p + 1):
                if r <= len(tail):
                    suf_min[i][r][c] = sum(tail[:r])
                    suf_max[i][r][c] = sum(tail[-r:])
                else:
                    suf_min[i][r][c] = big
                    suf_max[i][r][c] = -big
    out = []
    chosen = []

    def rec(start, left, need):
        if left == 0:
            if all(x == 0 for x in need):
                out.append(tuple(chosen))
            return
        if d - start < left:
            return
        sm, sx = suf_min[start][left], suf_max[start][left]
        for c in range(n):
            if not sm[c] <= need[c] <= sx[c]:
                return
        for i in range(start, d - left + 1):
            chosen.append(i)
            rec(i + 1, left - 1, tuple(x - y for x, y in zip(need, ws[i])))
            chosen.pop()

    rec(0, p, target)
    return out


def weight_subspace_monomials(n: int, spec, lam):
    """Internal monomials of the spec with torus weight lam, sorted."""
    spec = make_spec(spec)
    lam = tuple(lam)
    results = []

    def rec(bi, prefix, need):
        if bi == len(spec) - 1:
            for m in _block_monomials_at(n, spec[bi], need):
                results.append(prefix + (m,))
            return
        rest_dims = space_weight_dims(n, spec[bi + 1:])
        for w, ms in _block_monomials_by_weight(n, spec[bi]).items():
            need2 = tuple(a - b for a, b in zip(need, w))
            if need2 not in rest_dims:
                continue
            for m in ms:
                rec(bi + 1, prefix + (m,), need2)

    if len(spec) == 1:
        results = [(m,) for m in _block_monomials_at(n, spec[0], lam)]
    else:
        rec(0, (), lam)
    results.sort()
    return results


def weight_subspace_basis(n: int, spec, lam):
    """Public form: tuples of exponent vectors in canonical wedge order."""
    spec = make_spec(spec)
    out = []
    for mono in weight_subspace_monomials(n, spec, lam):
        factors = []
        for b, idxs in zip(spec, mono):
            monos_q = monomials(n, b.q)
            factors.extend(monos_q[i] for i in idxs)
        out.append(tuple(factors))
    return out


def to_wedge_vector(n: int, spec, vec: dict) -> WedgeVector:
    """Internal sparse vector -> public WedgeVector."""
    spec = make_spec(spec)
    out = WedgeVector(n)
    for mono, coeff in vec.items():
        factors = []
        for b, idxs in zip(spec, mono):
            monos_q = monomials(n, b.q)
            factors.extend(monos_q[i] for i in idxs)
        out.add_term(tuple(factors), Q(coeff))
    return out


# ---------------------------------------------------------------------------
# root action on internal monomials


def root_apply_internal(n: int, spec, rho, mono):
    """Derivation action of one root vector; returns [(monomial, coeff)]."""
    out = []
    for bi, (block, idxs) in enumerate(zip(spec, mono)):
        table = generator_action(n, block.q, rho)
        for k, src in enumerate(idxs):
            for tgt, cf in table[src]:
                rest = idxs[:k] + idxs[k + 1:]
                j = bisect_left(rest, tgt)
                if block.sym:
                    sign = 1
                else:
                    if j < len(rest) and rest[j] == tgt:
                        continue
                    sign = -1 if (k - j) % 2 else 1
                new_idxs = rest[:j] + (tgt,) + rest[j:]
                out.append((mono[:bi] + (new_idxs,) + mono[bi + 1:], sign * cf))
    return out


def invariance_system(n: int, spec, lam, roots=None):
    """The stacked raising-root system on the weight-lam subspace.

    Returns (matrix, column_monomials); rows are the (root, target monomial)
    pairs actually reachable, in canonical order.
    """
    spec = make_spec(spec)
    roots = raising_roots(n) if roots is None else tuple(roots)
    cols = weight_subspace_monomials(n, spec, lam)
    rows = {}
    for ri, rho in enumerate(roots):
        for j, m in enumerate(cols):
            for m2, cf in root_apply_internal(n, spec, rho, m):
                key = (ri, m2)
                row = rows.get(key)
                if row is None:
                    row = rows[key] = {}
                row[j] = row.get(j, 0) + cf
    int_rows = []
    for key in sorted(rows):
        row = tuple((j, v) for j, v in sorted(rows[key].items()) if v)
        if row:
            int_rows.append(row)
    mat = linalg.SparseRationalMatrix(len(int_rows), len(cols), int_rows)
    return mat, cols


def apply_root_to_vector(n, spec, rho, vec: dict) -> dict:
    out = {}
    for mono, coeff in vec.items():
        for m2, cf in root_apply_internal(n, spec, rho, mono):
            c = out.get(m2, 0) + coeff * cf
            if c:
                out[m2] = c
            elif m2 in out:
                del out[m2]
    return out


def verify_annihilated(n: int, spec, vec: dict, roots) -> bool:
    return all(not apply_root_to_vector(n, spec, rho, vec) for rho in roots)


def maximal_vectors(n: int, spec, lam, use_peel: bool = True):
    """Canonical basis of weight-lam vectors killed by all raising roots.

    The count is the multiplicity of V_lam.  Vectors are internal sparse
    {monomial: rational} maps; use to_wedge_vector for the public form.
    Every returned vector is exactly re-verified against all raising roots.
    """
    spec = make_spec(spec)
    lam = tuple(lam)
    if space_weight_dims(n, spec).get(lam, 0) == 0:
        return []
    if (
        use_peel
        and len(spec) > 1
        and lam == (0,) * n
        and not any(b.sym for b in spec)
    ):
        vectors = _trivial_vectors_by_peeling(n, spec)
    else:
        mat, cols = invariance_system(n, spec, lam)
        null = linalg.nullspace_basis(mat)
        vectors = [{cols[j]: c for j, c in v.items()} for v in null]
    for v in vectors:
        if not verify_annihilated(n, spec, v, raising_roots(n)):
            raise DimensionAuditError("maximal vector failed exact re-check")
    return vectors


# ---------------------------------------------------------------------------
# lowering-orbit spans


class _SpanRREF:
    """Echelon store of span vectors, graded by torus weight.

    Pivot vectors are normalized to leading coefficient 1 and never mutated
    afterwards, so they double as the canonical basis of the span.
    """

    def __init__(self):
        self.pivots_by_weight = {}   # weight -> {pivot key: vector}
        self.basis = []              # pivot vectors in insertion order
        self.basis_weights = []
        self.index_of = {}           # (weight, pivot key) -> basis index

    def _reduce(self, weight, vec):
        pivots = self.pivots_by_weight.get(weight, {})
        v = dict(vec)
        coeffs = {}
        while v:
            m = min(v)
            if m not in pivots:
                break
            c = v[m]
            coeffs[m] = c
            for k, pv in pivots[m].items():
                nv = v.get(k, 0) - c * pv
                if nv:
                    v[k] = nv
                elif k in v:
                    del v[k]
        return coeffs, v

    def insert(self, weight, vec):
        """Insert if independent; returns the normalized pivot vector or None."""
        _, residual = self._reduce(weight, vec)
        if not residual:
            return None
        m = min(residual)
        lead = residual[m]
        norm = {k: v / lead for k, v in residual.items()}
        self.pivots_by_weight.setdefault(weight, {})[m] = norm
        self.index_of[(weight, m)] = len(self.basis)
        self.basis.append(norm)
        self.basis_weights.append(weight)
        return norm

    def express(self, weight, vec):
        """Basis indices -> coefficients, or None if vec is outside the span."""
        coeffs, residual = self._reduce(weight, vec)
        if residual:
            return None
        return {self.index_of[(weight, m)]: c for m, c in coeffs.items() if c}


def _span_structure(n, spec, maximal_vector, lam):
    target = weyl_dim(n, lam)
    rref = _SpanRREF()
    v0 = {m: Q(c) for m, c in maximal_vector.items()}
    first = rref.insert(lam, v0)
    queue = [(lam, first)]
    lowers = lowering_roots(n)
    while queue and len(rref.basis) < target:
        w, vec = queue.pop(0)
        for rho in lowers:
            img = apply_root_to_vector(n, spec, rho, vec)
            if not img:
                continue
            w2 = _wsum(w, rho.shift(n))
            added = rref.insert(w2, img)
            if added is not None:
                queue.append((w2, added))
                if len(rref.basis) >= target:
                    break
    if len(rref.basis) != target:
        raise DimensionAuditError(
            f"span stopped growing at {len(rref.basis)} < {target}"
        )
    return rref


def irreducible_span(n: int, spec, maximal_vector, lam):
    """Basis of the irreducible subspace generated by a maximal vector,
    grown by the lowering-root orbit until weyl_dim(n, lam) is reached."""
    spec = make_spec(spec)
    return list(_span_structure(n, spec, maximal_vector, tuple(lam)).basis)


# ---------------------------------------------------------------------------
# trivial invariants of products (the peeling construction)


class _Side(NamedTuple):
    """A tensor factor presented by a graded basis and its raising maps."""

    weights: list        # weight tuple per basis index
    raising_maps: list   # per raising root: {src index: ((dst index, coeff), ...)}


def _side_from_span(n, spec, rref: _SpanRREF) -> _Side:
    maps = []
    for rho in raising_roots(n):
        table = {}
        for i, (w, vec) in enumerate(zip(rref.basis_weights, rref.basis)):
            img = apply_root_to_vector(n, spec, rho, vec)
            if not img:
                continue
            w2 = _wsum(w, rho.shift(n))
            coeffs = rref.express(w2, img)
            if coeffs is None:
                raise DimensionAuditError("span not closed under a raising root")
            table[i] = tuple(sorted(coeffs.items()))
        maps.append(table)
    return _Side(list(rref.basis_weights), maps)


def _side_from_generators(n, q) -> _Side:
    """The whole degree-q dual space: basis = its monomials."""
    maps = []
    for rho in raising_roots(n):
        act = generator_action(n, q, rho)
        maps.append({i: act[i] for i in range(len(act)) if act[i]})
    return _Side(list(weights_table(n, q)), maps)


def _product_trivial_vectors(left: _Side, right: _Side):
    """Invariant weight-zero vectors of left (x) right.

    Variables are index pairs with opposite weights; one equation per
    raising root per reachable target pair.
    """
    right_at = {}
    for j, w in enumerate(right.weights):
        right_at.setdefault(w, []).append(j)
    variables = []
    for i, w in enumerate(left.weights):
        for j in right_at.get(_wneg(w), ()):
            variables.append((i, j))
    variables.sort()
    var_of = {v: k for k, v in enumerate(variables)}
    rows = {}
    for ri in range(len(left.raising_maps)):
        lmap = left.raising_maps[ri]
        rmap = right.raising_maps[ri]
        for k, (i, j) in enumerate(variables):
            for i2, c in lmap.get(i, ()):
                row = rows.setdefault((ri, i2, j), {})
                row[k] = row.get(k, 0) + c
            for j2, c in rmap.get(j, ()):
                row = rows.setdefault((ri, i, j2), {})
                row[k] = row.get(k, 0) + c
    int_rows = []
    for key in sorted(rows):
        row = tuple((j, v) for j, v in sorted(rows[key].items()) if v)
        if row:
            int_rows.append(row)
    null = linalg.nullspace_basis((int_rows, len(variables)))
    return [{variables[k]: c for k, c in v.items()} for v in null]


def _trivial_vectors_by_peeling(n, spec):
    """(prefix (x) last block)^triv by pairing matching highest weights."""
    prefix = spec[:-1]
    last = spec[-1]
    out = []
    if last.p == 1:
        summands = [((last.q,) + (0,) * (n - 1), None)]
    else:
        _, by_weight = _decompose_with_vectors(n, (last,))
        summands = sorted(
            ((lam, v) for lam, vs in by_weight.items() for v in vs),
            key=lambda t: t[0],
            reverse=True,
        )
    for lam, lastvec in summands:
        prefix_max = maximal_vectors(n, prefix, lam)
        if not prefix_max:
            continue
        if lastvec is None:
            right = _side_from_generators(n, last.q)
            right_basis = None
        else:
            right_rref = _span_structure(n, (last,), lastvec, lam)
            right = _side_from_span(n, (last,), right_rref)
            right_basis = right_rref.basis
        for u in prefix_max:
            left_rref = _span_structure(n, prefix, u, lam)
            left = _side_from_span(n, prefix, left_rref)
            pair_vecs = _product_trivial_vectors(left, right)
            if len(pair_vecs) != 1:
                raise DimensionAuditError(
                    f"expected one invariant pairing, got {len(pair_vecs)}"
                )
            out.append(
                _expand_pair_vector(left_rref.basis, right_basis, pair_vecs[0])
            )
    return out


def _expand_pair_vector(left_basis, right_basis, pair_vec):
    """Rebuild full product coordinates from (left idx, right idx) weights."""
    out = {}
    for (i, j), coeff in pair_vec.items():
        lvec = left_basis[i]
        if right_basis is None:
            right_terms = [(((j,),), 1)]
        else:
            right_terms = list(right_basis[j].items())
        for lmono, lc in lvec.items():
            for rmono, rc in right_terms:
                mono = lmono + rmono
                c = coeff * lc * rc
                acc = out.get(mono, 0) + c
                if acc:
                    out[mono] = acc
                elif mono in out:
                    del out[mono]
    return out


# ---------------------------------------------------------------------------
# full decompositions


def decompose_space(n: int, spec, stats=None) -> IrrepDecomposition:
    """Irreducible decomposition via one maximal-vector system per candidate
    dominant weight; fails loudly if the dimension audit does not balance."""
    deco, _ = _decompose_with_vectors(n, spec, stats=stats, keep_vectors=False)
    return deco


def _decompose_with_vectors(n, spec, stats=None, keep_vectors=True):
    spec = make_spec(spec)
    total = total_dim(n, spec)
    wdims = space_weight_dims(n, spec)
    dominant = [w for w, d in wdims.items() if d > 0 and _is_dominant(w)]
    degrees = []
    for b in spec:
        degrees.extend([b.q] * b.p)
    upper = tensor_support_upper_bound(n, degrees)
    candidates = sorted((w for w in dominant if w in upper), reverse=True)
    if stats is not None:
        stats["candidates_weight_space"] = len(dominant)
        stats["candidates_after_crystal_prune"] = len(candidates)
    deco = IrrepDecomposition(n)
    vectors = {}
    acc = 0
    for done, lam in enumerate(candidates, start=1):
        if acc == total:
            break
        vs = maximal_vectors(n, spec, lam)
        if vs:
            deco.add(lam, len(vs))
            acc += len(vs) * weyl_dim(n, lam)
            if keep_vectors:
                vectors[lam] = vs
        if len(candidates) > 40 and done % 10 == 0:
            progress(
                f"decompose {format_space_spec(spec)}: "
                f"{done}/{len(candidates)} weights solved"
            )
    if acc != total:
        raise DimensionAuditError(
            f"{format_space_spec(spec)}: found dimension {acc}, expected {total}"
        )
    return deco, vectors


def _is_dominant(w):
    return all(w[i] >= w[i + 1] for i in range(len(w) - 1)) and w[-1] >= 0


def symmetric_square_spec(q: int):
    return (Block(q, 2, sym=True),)
