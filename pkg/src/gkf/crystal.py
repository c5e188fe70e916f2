"""Crystal action of tableaux on Young diagrams and tensor-product splitting.

A tableau acts on a partition cell by cell, rightmost column first and top to
bottom within a column: an unbarred letter k adds a cell to row k, a barred
letter kbar removes one from row k, and the process dies the moment the
vector stops being a Young diagram.  Folding this action over the whole
crystal base of V_mu computes the irreducible decomposition of
V_lambda (x) V_mu without Littlewood-Richardson combinatorics.
"""

import json
from functools import lru_cache

from .partitions import (
    column_heights,
    format_partition,
    normalize_partition,
    weyl_dim,
)
from .tableaux import SSCTableau, bar, enumerate_crystal_base

FAILURE = None  # sentinel: the action left the Young-diagram lattice


def apply_letter(diagram, letter: int, n: int):
    """One step of the action; returns the new row vector or FAILURE.

    ``diagram`` is a length-n vector of row lengths (not necessarily a
    partition on input only in so far as callers pass valid ones).
    """
    v = list(diagram)
    if letter <= n:
        v[letter - 1] += 1
    else:
        v[2 * n + 1 - letter - 1] -= 1
    for i in range(n - 1):
        if v[i] < v[i + 1]:
            return FAILURE
    if v[n - 1] < 0:
        return FAILURE
    return tuple(v)


def apply_tableau(tableau: SSCTableau, lam, n: int):
    """Fold apply_letter over the tableau's cells; FAILURE propagates."""
    v = normalize_partition(lam, n)
    for col in reversed(tableau.columns):
        for letter in col:
            v = apply_letter(v, letter, n)
            if v is FAILURE:
                return FAILURE
    return v


class IrrepDecomposition:
    """Multiset of irreducible summands: partition -> multiplicity."""

    def __init__(self, n: int, entries=None):
        self.n = n
        self.entries = {}
        for lam, mult in dict(entries or {}).items():
            lam = normalize_partition(lam, n)
            if mult < 0:
                raise ValueError("multiplicities must be non-negative")
            if mult:
                self.entries[lam] = self.entries.get(lam, 0) + mult

    def add(self, lam, mult: int = 1):
        lam = normalize_partition(lam, self.n)
        self.entries[lam] = self.entries.get(lam, 0) + mult

    def mult(self, lam) -> int:
        return self.entries.get(normalize_partition(lam, self.n), 0)

    def support(self):
        return set(self.entries)

    def total_dim(self) -> int:
        return sum(m * weyl_dim(self.n, lam) for lam, m in self.entries.items())

    def sorted_items(self):
        return sorted(self.entries.items(), key=lambda kv: kv[0], reverse=True)

    def to_json(self) -> str:
        return json.dumps(
            {
                "rank": self.n,
                "summands": [
                    {"lambda": list(lam), "mult": m} for lam, m in self.sorted_items()
                ],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "IrrepDecomposition":
        data = json.loads(text)
        return cls(
            data["rank"],
            {tuple(s["lambda"]): s["mult"] for s in data["summands"]},
        )

    def __eq__(self, other):
        return (
            isinstance(other, IrrepDecomposition)
            and self.n == other.n
            and self.entries == other.entries
        )

    def __repr__(self):
        body = " + ".join(
            (f"{m} " if m != 1 else "") + f"V[{format_partition(lam)}]"
            for lam, m in self.sorted_items()
        )
        return body or "0"


def tensor_decompose(n: int, lam, mu) -> IrrepDecomposition:
    """Decompose V_lam (x) V_mu by acting with the crystal base of mu on lam."""
    lam = normalize_partition(lam, n)
    mu = normalize_partition(mu, n)
    out = IrrepDecomposition(n)
    for t in enumerate_crystal_base(n, mu):
        nu = apply_tableau(t, lam, n)
        if nu is not FAILURE:
            out.add(nu)
    return out


@lru_cache(maxsize=None)
def _tensor_decompose_cached(n, lam, mu):
    return tensor_decompose(n, lam, mu)


def canonical_tableau_T(mu, n: int) -> SSCTableau:
    """The tableau printing k across row k; the unique one with T . triv = mu."""
    mu = normalize_partition(mu, n)
    cols = [tuple(range(1, h + 1)) for h in column_heights(mu, n)]
    return SSCTableau(cols, n)


def canonical_tableau_That(mu, n: int) -> SSCTableau:
    """Columns (jbar, ..., 2bar, 1bar) per height-j column of mu; the unique
    tableau with That . mu = triv."""
    mu = normalize_partition(mu, n)
    cols = [
        tuple(bar(k, n) for k in range(h, 0, -1)) for h in column_heights(mu, n)
    ]
    return SSCTableau(cols, n)


def trivial_multiplicity(w: IrrepDecomposition, z: IrrepDecomposition) -> int:
    """Multiplicity of the trivial representation in W (x) Z.

    Trivial factors only pair identical summands, so the count is
    sum over common lambda of mult_W(lambda) * mult_Z(lambda).
    """
    if w.n != z.n:
        raise ValueError("decompositions have different ranks")
    return sum(
        m * z.entries[lam] for lam, m in w.entries.items() if lam in z.entries
    )


def trivial_multiplicity_with_S(w: IrrepDecomposition, h: int) -> int:
    """Multiplicity of the trivial rep in W (x) S_h: the [h,0,...,0]-count of W."""
    return w.mult((h,) + (0,) * (w.n - 1))


def tensor_support_upper_bound(n: int, degrees) -> set:
    """Support of S_{q_1} (x) ... (x) S_{q_k}, iterated via the crystal action.

    Used to prune candidate highest weights of subspaces of the product.
    """
    support = {(0,) * n}
    for q in degrees:
        mu = (q,) + (0,) * (n - 1)
        new = set()
        for lam in support:
            new |= _tensor_decompose_cached(n, lam, mu).support()
        support = new
    return support
