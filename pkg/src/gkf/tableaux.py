"""Symplectic semistandard tableaux (Kashiwara-Nakashima type C crystals).

The alphabet for rank n is 1 < 2 < ... < n < nbar < ... < 2bar < 1bar,
encoded internally as the integers 1..2n with kbar := 2n+1-k.  A tableau is
stored column-major: a list of strictly increasing columns, tallest first.
The crystal base of the Sp(2n) irreducible V_mu is exactly the set of
semistandard fillings of mu that pass the one-column condition (C-1) and
the adjacent-column condition (C-2).
"""

from functools import lru_cache
from itertools import combinations

from .partitions import column_heights, normalize_partition, weyl_dim

ABSENT = 0  # pos() result when a letter is not in the column


def bar(k: int, n: int) -> int:
    """Encoded barred letter: kbar = 2n+1-k (an involution on 1..2n)."""
    return 2 * n + 1 - k


def letter_str(a: int, n: int) -> str:
    return str(a) if a <= n else f"{2 * n + 1 - a}b"


def parse_letter(tok: str, n: int) -> int:
    tok = tok.strip()
    if tok.endswith("b"):
        k = int(tok[:-1])
        if not 1 <= k <= n:
            raise ValueError(f"letter out of range: {tok}")
        return bar(k, n)
    k = int(tok)
    if not 1 <= k <= n:
        raise ValueError(f"letter out of range: {tok}")
    return k


def pos(column, a: int) -> int:
    """1-based position of letter ``a`` in the column, or ABSENT (0)."""
    try:
        return column.index(a) + 1
    except ValueError:
        return ABSENT


def check_c1(column, n: int) -> bool:
    """One-column admissibility.

    For every k <= n with both k and kbar present:
        pos(k) + (|column| + 1 - pos(kbar)) <= k.
    """
    h = len(column)
    members = set(column)
    for k in range(1, n + 1):
        kb = bar(k, n)
        if k in members and kb in members:
            if pos(column, k) + (h + 1 - pos(column, kb)) > k:
                return False
    return True


def check_c2(left, right, n: int) -> bool:
    """Adjacent-column admissibility.

    For 1 <= a <= b <= n with a in the left column and abar in the right,
    an (a,b)-configuration is

        pos_L(a) <= pos_R(b) < pos_R(bbar) <= pos_R(abar)   (b, bbar right) or
        pos_L(a) <= pos_L(b) < pos_L(bbar) <= pos_R(abar)   (b, bbar left)

    and it must satisfy pos(b) - pos(a) + pos(abar) - pos(bbar) < b - a.
    """
    lset, rset = set(left), set(right)
    for a in range(1, n + 1):
        ab = bar(a, n)
        if a not in lset or ab not in rset:
            continue
        pa = pos(left, a)
        pab = pos(right, ab)
        for b in range(a, n + 1):
            bb = bar(b, n)
            if b in rset and bb in rset:
                pb, pbb = pos(right, b), pos(right, bb)
                if pa <= pb < pbb <= pab:
                    if pb - pa + pab - pbb >= b - a:
                        return False
            if b in lset and bb in lset:
                pb, pbb = pos(left, b), pos(left, bb)
                if pa <= pb < pbb <= pab:
                    if pb - pa + pab - pbb >= b - a:
                        return False
    return True


class SSCTableau:
    """A semistandard C-tableau, stored as columns (tallest first)."""

    __slots__ = ("n", "columns")

    def __init__(self, columns, n: int, validate: bool = True):
        self.n = n
        self.columns = tuple(tuple(col) for col in columns)
        if validate:
            self.validate()

    @property
    def shape(self):
        """Row lengths of the underlying Young diagram, zero-padded to n."""
        rows = [0] * self.n
        for col in self.columns:
            for i in range(len(col)):
                rows[i] += 1
        return tuple(rows)

    def rows(self):
        """Row-major reading (left to right within each row)."""
        height = len(self.columns[0]) if self.columns else 0
        return [
            [col[i] for col in self.columns if len(col) > i] for i in range(height)
        ]

    def reading_word(self):
        """Column-major word: columns left to right, each top to bottom."""
        return tuple(a for col in self.columns for a in col)

    def validate(self):
        n = self.n
        cols = self.columns
        for col in cols:
            if not col or any(not 1 <= a <= 2 * n for a in col):
                raise ValueError(f"letters out of range in column {col}")
            if any(col[i] >= col[i + 1] for i in range(len(col) - 1)):
                raise ValueError(f"column not strictly increasing: {col}")
            if not check_c1(col, n):
                raise ValueError(f"column fails C-1: {col}")
        for left, right in zip(cols, cols[1:]):
            if len(left) < len(right):
                raise ValueError("column heights must weakly decrease")
            if any(left[i] > right[i] for i in range(len(right))):
                raise ValueError("row condition violated between adjacent columns")
            if not check_c2(left, right, self.n):
                raise ValueError(f"adjacent columns fail C-2: {left} | {right}")

    def __eq__(self, other):
        return (
            isinstance(other, SSCTableau)
            and self.n == other.n
            and self.columns == other.columns
        )

    def __hash__(self):
        return hash((self.n, self.columns))

    def __repr__(self):
        return f"SSCTableau({self.to_text()!r}, n={self.n})"

    def to_text(self) -> str:
        """Text form: columns separated by '|', entries comma-separated,
        bars as a 'b' suffix (e.g. "1,2|1,3b")."""
        return "|".join(
            ",".join(letter_str(a, self.n) for a in col) for col in self.columns
        )

    @classmethod
    def from_text(cls, text: str, n: int) -> "SSCTableau":
        columns = [
            [parse_letter(tok, n) for tok in part.split(",")]
            for part in text.split("|")
            if part.strip()
        ]
        return cls(columns, n)

    @classmethod
    def from_rows(cls, rows, n: int) -> "SSCTableau":
        """Build from row-major entries (lists of encoded letters)."""
        width = len(rows[0]) if rows else 0
        columns = [
            [row[j] for row in rows if len(row) > j] for j in range(width)
        ]
        return cls(columns, n)


@lru_cache(maxsize=None)
def admissible_columns(n: int, height: int):
    """All strictly increasing height-``height`` columns over 1..2n passing C-1,
    in lexicographic order."""
    return tuple(
        col
        for col in combinations(range(1, 2 * n + 1), height)
        if check_c1(col, n)
    )


def enumerate_crystal_base(n: int, mu) -> list:
    """All semistandard C-tableaux of shape ``mu``, lexicographic on the
    column-major reading word.  The count equals weyl_dim(n, mu)."""
    mu = normalize_partition(mu, n)
    heights = column_heights(mu, n)
    if not heights:
        return [SSCTableau((), n, validate=False)]
    out = []

    def extend(cols):
        depth = len(cols)
        if depth == len(heights):
            out.append(SSCTableau(cols, n, validate=False))
            return
        prev = cols[-1] if cols else None
        for col in admissible_columns(n, heights[depth]):
            if prev is not None:
                if any(prev[i] > col[i] for i in range(len(col))):
                    continue
                if not check_c2(prev, col, n):
                    continue
            extend(cols + [col])

    extend([])
    out.sort(key=lambda t: t.reading_word())
    return out


@lru_cache(maxsize=None)
def crystal_base_size(n: int, mu) -> int:
    return len(enumerate_crystal_base(n, mu))


def crystal_matches_weyl(n: int, mu) -> bool:
    """Cross-check |cbase| against the Weyl dimension formula."""
    return crystal_base_size(n, normalize_partition(mu, n)) == weyl_dim(n, mu)
