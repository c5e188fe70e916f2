"""Exact sparse rational linear algebra: rank and nullspace bases.

Strategy
--------
Rows are cleared to integers, then eliminated modulo one or more 31-bit
primes (sparse row-echelon with least-column pivoting).  Candidate
nullspace vectors are lifted by CRT + rational reconstruction and verified
exactly; a verified nullspace of size k plus a rank-r certificate mod p
(r pivots found means some r x r minor is a nonzero integer mod p, hence
nonzero over Q) pins rank = n_cols - k exactly.  Tiny systems take a pure
rational path instead.  Both paths return the same canonical answer: the
reduced-echelon nullspace basis (one vector per free column, unit at that
column, zeros at the other free columns), which is independent of row
order, thread count and pivot strategy.

Interchange formats
-------------------
Text: header line ``rows cols nnz`` then triplet lines ``r c num/den``.
Binary (cache) format, little-endian throughout:
  magic ``GKFMAT01`` (8 bytes), u64 rows, u64 cols, u64 nnz, then per entry
  u64 row, u64 col, num, den; each integer is serialized as i32 byte count
  (negative for negative values) followed by that many magnitude bytes.
"""

import struct
from math import gcd, isqrt

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

# the ten largest primes below 2^31: products with 31-bit values fit in int64
PRIMES = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563,
    2147483549, 2147483543, 2147483497, 2147483489, 2147483477,
)

_RAT_MAX_COLS = 64  # below this, plain rational elimination is cheapest


class SparseRationalMatrix:
    """Row-major sparse matrix with exact rational entries."""

    __slots__ = ("n_rows", "n_cols", "rows")

    def __init__(self, n_rows: int, n_cols: int, rows):
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.rows = [tuple((c, v) for c, v in row if v) for row in rows]
        if len(self.rows) != n_rows:
            raise ValueError("row count mismatch")
        for row in self.rows:
            for c, _ in row:
                if not 0 <= c < n_cols:
                    raise ValueError("column index out of range")

    @classmethod
    def from_triplets(cls, n_rows: int, n_cols: int, triplets):
        rows = [[] for _ in range(n_rows)]
        for r, c, v in triplets:
            rows[r].append((c, v))
        merged = []
        for row in rows:
            acc = {}
            for c, v in row:
                acc[c] = acc.get(c, 0) + v
            merged.append(sorted(acc.items()))
        return cls(n_rows, n_cols, merged)

    @classmethod
    def from_rows(cls, n_cols: int, row_iter):
        """Streaming constructor: ``row_iter`` yields (col, coeff) sequences."""
        rows = [tuple(sorted(row)) for row in row_iter]
        return cls(len(rows), n_cols, rows)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def dot(self, vec: dict) -> dict:
        """Exact product M . v for a sparse column vector {col: coeff}."""
        out = {}
        for i, row in enumerate(self.rows):
            s = 0
            for c, v in row:
                x = vec.get(c)
                if x:
                    s += v * x
            if s:
                out[i] = s
        return out

    # -- text format --------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.n_rows} {self.n_cols} {self.nnz}"]
        for i, row in enumerate(self.rows):
            for c, v in row:
                q = Q(v)
                lines.append(f"{i} {c} {q.numerator}/{q.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SparseRationalMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        n_rows, n_cols, nnz = map(int, lines[0].split())
        triplets = []
        for ln in lines[1:]:
            r, c, frac = ln.split()
            num, _, den = frac.partition("/")
            triplets.append((int(r), int(c), Q(int(num), int(den or 1))))
        if len(triplets) != nnz:
            raise ValueError("nnz mismatch in matrix text")
        return cls.from_triplets(n_rows, n_cols, triplets)

    # -- binary format ------------------------------------------------------

    _MAGIC = b"GKFMAT01"

    def save_binary(self, path):
        with open(path, "wb") as fh:
            fh.write(self._MAGIC)
            fh.write(struct.pack("<QQQ", self.n_rows, self.n_cols, self.nnz))
            for i, row in enumerate(self.rows):
                for c, v in row:
                    q = Q(v)
                    fh.write(struct.pack("<QQ", i, c))
                    _write_int(fh, int(q.numerator))
                    _write_int(fh, int(q.denominator))

    @classmethod
    def load_binary(cls, path) -> "SparseRationalMatrix":
        with open(path, "rb") as fh:
            if fh.read(8) != cls._MAGIC:
                raise ValueError("bad magic in binary matrix file")
            n_rows, n_cols, nnz = struct.unpack("<QQQ", fh.read(24))
            triplets = []
            for _ in range(nnz):
                r, c = struct.unpack("<QQ", fh.read(16))
                num = _read_int(fh)
                den = _read_int(fh)
                triplets.append((r, c, Q(num, den)))
        return cls.from_triplets(n_rows, n_cols, triplets)


def _write_int(fh, value: int):
    mag = abs(value)
    nbytes = max(1, (mag.bit_length() + 7) // 8)
    fh.write(struct.pack("<i", -nbytes if value < 0 else nbytes))
    fh.write(mag.to_bytes(nbytes, "little"))


def _read_int(fh) -> int:
    (nbytes,) = struct.unpack("<i", fh.read(4))
    mag = int.from_bytes(fh.read(abs(nbytes)), "little")
    return -mag if nbytes < 0 else mag


# ---------------------------------------------------------------------------
# integer clearing


def _integer_rows(matrix: SparseRationalMatrix):
    """Scale each row by the lcm of denominators; nullspace is unchanged."""
    out = []
    for row in matrix.rows:
        if not row:
            continue
        lcm = 1
        for _, v in row:
            d = getattr(v, "denominator", 1)
            lcm = lcm * d // gcd(lcm, int(d))
        if lcm == 1:
            out.append(tuple((c, int(v)) for c, v in row))
        else:
            out.append(tuple((c, int(v * lcm)) for c, v in row))
    return out


# ---------------------------------------------------------------------------
# sparse row echelon mod p


def _ref_insert_rows(pivots: dict, int_rows, p: int):
    """Insert rows into a streaming sparse REF mod p (least-column pivots).

    ``pivots`` maps pivot column -> normalized row dict (pivot entry 1);
    the structure supports incremental growth.
    """
    for row in int_rows:
        work = {}
        for c, v in row:
            r = v % p
            if r:
                work[c] = r
        while work:
            c = min(work)
            prow = pivots.get(c)
            if prow is None:
                inv = pow(work[c], p - 2, p)
                pivots[c] = {j: (v * inv) % p for j, v in work.items()}
                break
            f = work[c]
            for j, v in prow.items():
                nv = (work.get(j, 0) - f * v) % p
                if nv:
                    work[j] = nv
                elif j in work:
                    del work[j]


def _ref_mod_p(int_rows, n_cols: int, p: int):
    pivots = {}
    _ref_insert_rows(pivots, int_rows, p)
    return pivots, sorted(pivots)


def _nullspace_mod_p(pivots, pivot_cols, n_cols: int, p: int):
    """Canonical nullspace vectors mod p, one per free column.

    Vector for free column f: 1 at f, 0 at other free columns, and the
    pivot coordinates solved by back-substitution.
    """
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(n_cols) if c not in pivot_set]
    vectors = []
    for f in free_cols:
        x = {f: 1}
        for c in reversed(pivot_cols):
            if c > f:
                continue
            s = 0
            for j, v in pivots[c].items():
                if j == c:
                    continue
                xj = x.get(j)
                if xj:
                    s += v * xj
            s %= p
            if s:
                x[c] = (-s) % p
        vectors.append((f, x))
    return free_cols, vectors


# ---------------------------------------------------------------------------
# CRT and rational reconstruction


def _crt(res_a: int, mod_a: int, res_b: int, mod_b: int):
    inv = pow(mod_a % mod_b, mod_b - 2, mod_b)
    t = ((res_b - res_a) * inv) % mod_b
    return res_a + mod_a * t


def rational_reconstruct(residue: int, modulus: int):
    """Find p/q with residue = p * q^-1 mod modulus and |p|, q <= sqrt(m/2).

    Returns None when no such fraction exists (need more primes).
    """
    bound = isqrt(modulus // 2)
    r0, r1 = modulus, residue % modulus
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r1 > bound or abs(s1) > bound or s1 == 0:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    return Q(r1, s1) if s1 > 0 else Q(-r1, -s1)


# ---------------------------------------------------------------------------
# the public operations


class LinalgError(RuntimeError):
    pass


def _rational_nullspace(int_rows, n_cols: int):
    """Plain fraction RREF for tiny systems."""
    pivots = {}
    for row in int_rows:
        work = {c: Q(v) for c, v in row if v}
        while work:
            c = min(work)
            prow = pivots.get(c)
            if prow is None:
                inv = 1 / work[c]
                pivots[c] = {j: v * inv for j, v in work.items()}
                break
            f = work[c]
            for j, v in prow.items():
                nv = work.get(j, 0) - f * v
                if nv:
                    work[j] = nv
                elif j in work:
                    del work[j]
    pivot_cols = sorted(pivots)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(n_cols) if c not in pivot_set]
    out = []
    for f in free_cols:
        x = {f: Q(1)}
        for c in reversed(pivot_cols):
            if c > f:
                continue
            s = sum(v * x.get(j, 0) for j, v in pivots[c].items() if j != c)
            if s:
                x[c] = -s
        out.append({c: v for c, v in x.items() if v})
    return out


def _verify_kernel(int_rows, vec: dict) -> bool:
    """Exact check M . v = 0 using an integer-cleared copy of v."""
    lcm = 1
    for v in vec.values():
        d = int(getattr(v, "denominator", 1))
        lcm = lcm * d // gcd(lcm, d)
    ivec = {c: int(v * lcm) for c, v in vec.items()}
    for row in int_rows:
        s = 0
        for c, v in row:
            x = ivec.get(c)
            if x:
                s += v * x
        if s:
            return False
    return True


def nullspace_basis(matrix, progress=None):
    """Canonical exact basis of {x : Mx = 0}.

    Accepts a SparseRationalMatrix or pre-cleared integer rows via
    (int_rows, n_cols).  Returns a list of sparse {col: rational} vectors,
    one per free column, in ascending free-column order.

    Elimination runs on a subset of rows (shortest first) and the subset
    grows only when a candidate vector fails the exact check against the
    remaining rows; the final answer is always verified against every row,
    which is what certifies the nullity regardless of the subset used.
    """
    if isinstance(matrix, SparseRationalMatrix):
        int_rows = _integer_rows(matrix)
        n_cols = matrix.n_cols
    else:
        int_rows, n_cols = matrix
    if n_cols == 0:
        return []
    if not int_rows:
        return [{c: Q(1)} for c in range(n_cols)]
    if n_cols <= _RAT_MAX_COLS:
        return _rational_nullspace(int_rows, n_cols)

    # stride permutation mixes the root-grouped assembly order so an initial
    # slice already has nearly full rank
    ordered = _stride_permute(int_rows)
    p0 = PRIMES[0]
    pivots = {}
    batch = min(len(ordered), n_cols + n_cols // 16 + 64)
    used = list(ordered[:batch])
    tail = list(ordered[batch:])
    _ref_insert_rows(pivots, used, p0)
    while True:
        # screen candidate kernel mod p0 against the unprocessed rows before
        # attempting any lifting
        pivot_cols = sorted(pivots)
        _, vecs = _nullspace_mod_p(pivots, pivot_cols, n_cols, p0)
        bad = _violating_rows_mod_p(tail, [x for _, x in vecs], p0)
        if not bad:
            vectors = _lift_subset(used, n_cols, p0, pivots, pivot_cols, progress)
            if vectors is None:
                raise LinalgError("rational reconstruction failed with all primes")
            exact_bad = [
                row for row in tail if any(not _row_kills(row, v) for v in vectors)
            ]
            if not exact_bad:
                return vectors
            bad = exact_bad  # p0 missed these (entries divisible by p0)
        if progress:
            progress(f"adding {len(bad)} independent rows to the elimination")
        _ref_insert_rows(pivots, bad, p0)
        used.extend(bad)
        badset = set(bad)
        tail = [r for r in tail if r not in badset]


def _stride_permute(rows):
    n = len(rows)
    if n < 3:
        return list(rows)
    stride = max(1, int(n * 0.6180339887))
    while gcd(stride, n) != 1:
        stride += 1
    return [rows[(i * stride) % n] for i in range(n)]


def _lift_subset(used_rows, n_cols, p0, pivots0, pivot_cols0, progress=None):
    """CRT/reconstruct/verify over the consumed rows, adding primes as needed."""
    solved = [(p0, pivots0, pivot_cols0)]
    reference = pivot_cols0
    vectors = _lift_and_verify(used_rows, n_cols, solved, progress)
    if vectors is not None:
        return vectors
    for p in PRIMES[1:]:
        if progress:
            progress(f"eliminating mod another prime ({p})")
        pivots, pivot_cols = _ref_mod_p(used_rows, n_cols, p)
        if len(pivot_cols) > len(reference):
            reference = pivot_cols
            solved = [(p, pivots, pivot_cols)]
        elif pivot_cols == reference:
            solved.append((p, pivots, pivot_cols))
        else:
            continue
        vectors = _lift_and_verify(used_rows, n_cols, solved, progress)
        if vectors is not None:
            return vectors
    return None


def _violating_rows_mod_p(rows, vecs_mod_p, p):
    if not rows or not vecs_mod_p:
        return []
    bad = []
    for row in rows:
        for x in vecs_mod_p:
            s = 0
            for c, v in row:
                xc = x.get(c)
                if xc:
                    s += v * xc
            if s % p:
                bad.append(row)
                break
    return bad


def _row_kills(row, vec) -> bool:
    s = 0
    for c, v in row:
        x = vec.get(c)
        if x:
            s += v * x
    return not s


def _lift_and_verify(int_rows, n_cols, solved, progress=None):
    modulus = 1
    combined = None
    free_cols = None
    for p, pivots, pivot_cols in solved:
        fc, vecs = _nullspace_mod_p(pivots, pivot_cols, n_cols, p)
        per_prime = {f: x for f, x in vecs}
        if combined is None:
            free_cols = fc
            combined = {f: dict(x) for f, x in vecs}
            modulus = p
        else:
            for f in free_cols:
                mine = combined[f]
                theirs = per_prime[f]
                for c in set(mine) | set(theirs):
                    mine[c] = _crt(mine.get(c, 0), modulus, theirs.get(c, 0), p)
            modulus *= p
    out = []
    for f in free_cols:
        vec = {}
        for c, r in combined[f].items():
            q = rational_reconstruct(r, modulus)
            if q is None:
                return None
            if q:
                vec[c] = q
        out.append(vec)
    if progress:
        progress("verifying candidate nullspace exactly")
    for vec in out:
        if not _verify_kernel(int_rows, vec):
            return None
    return out


def rank(matrix) -> int:
    """Exact rank over Q: n_cols minus the certified nullity."""
    if isinstance(matrix, SparseRationalMatrix):
        n_cols = matrix.n_cols
    else:
        n_cols = matrix[1]
    return n_cols - len(nullspace_basis(matrix))


def rank_of_vectors(vectors) -> int:
    """Exact rank of a family of sparse {key: coeff} vectors.

    Keys may be arbitrary hashables; they are enumerated deterministically.
    """
    vectors = [v for v in vectors if v]
    if not vectors:
        return 0
    keys = {}
    for v in vectors:
        for k in v:
            if k not in keys:
                keys[k] = len(keys)
    rows = [tuple((keys[k], c) for k, c in v.items()) for v in vectors]
    # transpose: rank of the stacked row family
    mat = SparseRationalMatrix.from_triplets(
        len(rows), len(keys), [(i, c, v) for i, row in enumerate(rows) for c, v in row]
    )
    return mat.n_rows - len(nullspace_basis(_transpose(mat)))


def _transpose(matrix: SparseRationalMatrix) -> SparseRationalMatrix:
    rows = [[] for _ in range(matrix.n_cols)]
    for i, row in enumerate(matrix.rows):
        for c, v in row:
            rows[c].append((i, v))
    return SparseRationalMatrix(matrix.n_cols, matrix.n_rows, [sorted(r) for r in rows])


def solve_in_span(basis_vectors, target):
    """Coordinates of ``target`` in the span of ``basis_vectors``.

    All vectors are sparse {key: coeff} maps.  Returns the coefficient list
    or None when the target falls outside the span.
    """
    keys = {}
    for v in list(basis_vectors) + [target]:
        for k in v:
            if k not in keys:
                keys[k] = len(keys)
    k = len(basis_vectors)
    rows = []
    # columns: basis coefficients then -target; nullspace with unit last entry
    triplets = []
    for j, v in enumerate(basis_vectors):
        for key, c in v.items():
            triplets.append((keys[key], j, c))
    for key, c in target.items():
        triplets.append((keys[key], k, -c))
    mat = SparseRationalMatrix.from_triplets(len(keys), k + 1, triplets)
    for vec in nullspace_basis(mat):
        last = vec.get(k, 0)
        if last:
            return [vec.get(j, 0) / last for j in range(k)]
    return None
