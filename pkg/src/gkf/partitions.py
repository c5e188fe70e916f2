"""Partitions, Young-diagram column decompositions and Sp(2n) dimension formulas.

Partitions are plain tuples of non-negative integers, weakly decreasing and
zero-padded to length n so the rank is always explicit.  They label both the
irreducible representations of Sp(2n) and the Young diagrams the crystal
machinery acts on.
"""

from math import comb

Partition = tuple  # weakly decreasing ints, zero-padded to the rank


def is_partition(parts) -> bool:
    """True if ``parts`` is weakly decreasing with non-negative entries."""
    parts = tuple(parts)
    return all(isinstance(p, int) and p >= 0 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def normalize_partition(parts, n: int) -> Partition:
    """Zero-pad ``parts`` to length n, validating the partition shape.

    Raises ValueError if the entries are not weakly decreasing, negative,
    or if more than n of them are nonzero.
    """
    parts = tuple(int(p) for p in parts)
    if not is_partition(parts):
        raise ValueError(f"not a partition: {parts}")
    stripped = tuple(p for p in parts if p > 0)
    if len(stripped) > n:
        raise ValueError(f"partition {parts} has more than {n} nonzero parts")
    return stripped + (0,) * (n - len(stripped))


def parse_partition(text: str, n: int) -> Partition:
    """Parse the comma-separated text form, e.g. "4,2,1" (trailing zeros optional)."""
    text = text.strip()
    parts = tuple(int(tok) for tok in text.split(",") if tok.strip() != "") if text else ()
    return normalize_partition(parts, n)


def format_partition(parts) -> str:
    return ",".join(str(p) for p in parts)


def weyl_dim(n: int, parts) -> int:
    """Dimension of the Sp(2n) irreducible with highest weight ``parts``.

    Type-C Weyl dimension formula: with l_i = lambda_i + n - i + 1 and
    m_i = n - i + 1,

        dim = prod_i (l_i/m_i) * prod_{i<j} (l_i^2 - l_j^2)/(m_i^2 - m_j^2).

    The products are computed as one exact integer division at the end.
    """
    lam = normalize_partition(parts, n)
    l = [lam[i] + n - i for i in range(n)]  # l_i = lambda_i + n - i + 1, 0-based
    m = [n - i for i in range(n)]
    num = 1
    den = 1
    for i in range(n):
        num *= l[i]
        den *= m[i]
        for j in range(i + 1, n):
            num *= l[i] ** 2 - l[j] ** 2
            den *= m[i] ** 2 - m[j] ** 2
    q, r = divmod(num, den)
    if r:  # the formula is exactly divisible for genuine dominant weights
        raise ArithmeticError(f"weyl_dim not integral for n={n}, lambda={parts}")
    return q


def poly_dim(n: int, k: int) -> int:
    """Dimension of the degree-k homogeneous polynomials on R^(2n).

    Equals (2n-1+k)! / ((2n-1)! k!) = C(2n-1+k, k).
    """
    if k < 0:
        raise ValueError("degree must be non-negative")
    return comb(2 * n - 1 + k, k)


def column_decomposition(parts, n: int) -> tuple:
    """Exponents (p_1, ..., p_n) of single-cell columns building the diagram.

    p_i is the number of height-i columns: p_n = mu_n and
    p_i = mu_i - mu_{i+1} for i < n, so mu_k = sum_{i >= k} p_i.
    """
    mu = normalize_partition(parts, n)
    p = [0] * n
    p[n - 1] = mu[n - 1]
    for i in range(n - 1):
        p[i] = mu[i] - mu[i + 1]
    return tuple(p)


def partition_from_columns(p) -> Partition:
    """Inverse of column_decomposition: mu_k = sum_{i >= k} p_i."""
    n = len(p)
    return tuple(sum(p[i] for i in range(k, n)) for k in range(n))


def column_heights(parts, n: int) -> tuple:
    """Column heights of the Young diagram, tallest (leftmost) first."""
    mu = normalize_partition(parts, n)
    p = column_decomposition(mu, n)
    heights = []
    for i in range(n, 0, -1):
        heights.extend([i] * p[i - 1])
    return tuple(heights)


def dominant_weights_leq(n: int, max_size: int):
    """All partitions with at most n parts and |mu| <= max_size, descending lex."""
    out = []

    def rec(prefix, remaining, bound):
        out.append(tuple(prefix) + (0,) * (n - len(prefix)))
        if len(prefix) == n:
            return
        for v in range(min(remaining, bound), 0, -1):
            rec(prefix + [v], remaining - v, v)

    rec([], max_size, max_size)
    return sorted(set(out), reverse=True)
