"""Command-line front end: dimensions, crystals, decompositions, Betti tables.

Commands
--------
dim           Weyl dimension of an Sp(2n) irreducible, or a polynomial space
crystal       enumerate (or count) a crystal base
tensor        decompose V_lambda (x) V_mu
decompose     split a wedge/tensor block space into irreducibles
cochain-dims  dimensions of one weight's relative cochain spaces
betti         Betti numbers (and ranks) of one weight
report        dims + ranks + Betti + Euler characteristic for w = 2, 4, 6

Exit codes: 0 success, 2 bad arguments, 3 internal dimension-audit failure.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import cochains, split, util
from .cache import ResultCache, default_cache_dir
from .crystal import tensor_decompose
from .partitions import format_partition, normalize_partition, parse_partition, poly_dim, weyl_dim
from .split import DimensionAuditError
from .tableaux import enumerate_crystal_base

FORMATS = ("text", "tsv", "json")


@dataclass
class JobSpec:
    """A validated unit of CLI work, ready to dispatch."""

    command: str
    n: int = 3
    w: int = None
    shapes: list = field(default_factory=list)
    space: str = None
    degree: int = None
    count_only: bool = False
    fmt: str = "text"
    cache_dir: str = None
    no_cache: bool = False
    threads: int = None
    strict_grading: bool = False
    max_degree: int = None

    def cache(self):
        return None if self.no_cache else ResultCache(self.cache_dir)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="gkf",
        description="Relative cohomology of formal Hamiltonian vector fields on R^(2n)",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, default=3, help="rank (default 3)")
        p.add_argument("--format", choices=FORMATS, default="text", dest="fmt")
        p.add_argument("--cache-dir", default=None,
                       help=f"cache directory (default ${ENVVAR} or ~/.cache/gkf)")
        p.add_argument("--no-cache", action="store_true")
        p.add_argument("--threads", type=int, default=None,
                       help="cap internal parallelism (results never depend on it)")

    ENVVAR = "GKF_CACHE_DIR"

    p = sub.add_parser("dim", help="dimension of V_shape, or of S_k with --degree")
    common(p)
    p.add_argument("--shape", action="append", default=[])
    p.add_argument("--degree", type=int, default=None)

    p = sub.add_parser("crystal", help="enumerate a crystal base")
    common(p)
    p.add_argument("--shape", action="append", required=True)
    p.add_argument("--count", action="store_true", dest="count_only")

    p = sub.add_parser("tensor", help="decompose V_lambda (x) V_mu (two --shape)")
    common(p)
    p.add_argument("--shape", action="append", required=True)

    p = sub.add_parser("decompose", help='split a block space, e.g. --space "L2 S3"')
    common(p)
    p.add_argument("--space", required=True)

    p = sub.add_parser("cochain-dims", help="dimensions of one weight's cochain spaces")
    common(p)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=None)

    p = sub.add_parser("betti", help="Betti numbers of one weight")
    common(p)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--strict-grading", action="store_true")

    p = sub.add_parser("report", help="full table for w = 2, 4 (and 6 up to degree 5)")
    common(p)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--strict-grading", action="store_true")

    return ap


def job_from_args(args) -> JobSpec:
    job = JobSpec(
        command=args.command,
        n=args.n,
        w=getattr(args, "w", None),
        shapes=list(getattr(args, "shape", []) or []),
        space=getattr(args, "space", None),
        degree=getattr(args, "degree", None),
        count_only=getattr(args, "count_only", False),
        fmt=args.fmt,
        cache_dir=args.cache_dir,
        no_cache=args.no_cache,
        threads=args.threads,
        strict_grading=getattr(args, "strict_grading", False),
        max_degree=getattr(args, "max_degree", None),
    )
    if job.n < 1:
        raise ValueError("rank must be positive")
    if job.w is not None and job.w % 2:
        raise ValueError("odd weights give the zero complex; pick an even weight")
    job.shapes = [parse_partition(s, job.n) for s in job.shapes]
    return job


# ---------------------------------------------------------------------------
# output helpers


def _emit_table(rows, header, fmt, out):
    if fmt == "json":
        out.write(json.dumps([dict(zip(header, r)) for r in rows]) + "\n")
    elif fmt == "tsv":
        out.write("\t".join(header) + "\n")
        for r in rows:
            out.write("\t".join(str(x) for x in r) + "\n")
    else:
        widths = [max(len(str(x)) for x in [h] + [r[i] for r in rows])
                  for i, h in enumerate(header)]
        out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
        for r in rows:
            out.write("  ".join(str(x).ljust(w)
                                for x, w in zip(r, widths)).rstrip() + "\n")


# ---------------------------------------------------------------------------
# command implementations


def run(job: JobSpec, out=None) -> int:
    """Dispatch a job; returns the exit status."""
    out = out or sys.stdout
    if job.threads:
        util.set_threads(job.threads)
    try:
        return _dispatch(job, out)
    except DimensionAuditError as exc:
        print(f"gkf: dimension audit failed: {exc}", file=sys.stderr)
        return 3
    finally:
        util.set_threads(None)


def _dispatch(job: JobSpec, out) -> int:
    n = job.n
    if job.command == "dim":
        rows = []
        for shape in job.shapes:
            rows.append((format_partition(shape), weyl_dim(n, shape)))
        if job.degree is not None:
            rows.append((f"S_{job.degree}", poly_dim(n, job.degree)))
        if not rows:
            raise ValueError("dim needs --shape or --degree")
        _emit_table(rows, ("space", "dim"), job.fmt, out)
        return 0

    if job.command == "crystal":
        (shape,) = job.shapes or [None]
        if shape is None:
            raise ValueError("crystal needs --shape")
        base = enumerate_crystal_base(n, shape)
        if job.count_only:
            out.write(f"{len(base)}\n")
        elif job.fmt == "json":
            out.write(json.dumps([t.to_text() for t in base]) + "\n")
        else:
            for t in base:
                out.write(t.to_text() + "\n")
        return 0

    if job.command == "tensor":
        if len(job.shapes) != 2:
            raise ValueError("tensor needs exactly two --shape arguments")
        deco = tensor_decompose(n, job.shapes[0], job.shapes[1])
        if job.fmt == "json":
            out.write(deco.to_json() + "\n")
        else:
            rows = [(format_partition(lam), m) for lam, m in deco.sorted_items()]
            _emit_table(rows, ("lambda", "mult"), job.fmt, out)
        return 0

    if job.command == "decompose":
        spec = split.parse_space_spec(job.space)
        util.progress_enabled = True
        deco = split.decompose_space(n, spec)
        util.progress_enabled = False
        if job.fmt == "json":
            out.write(deco.to_json() + "\n")
        else:
            rows = [(format_partition(lam), m) for lam, m in deco.sorted_items()]
            _emit_table(rows, ("lambda", "mult"), job.fmt, out)
        return 0

    if job.command == "cochain-dims":
        limit = _weight_limit(job.n, job.w, job.max_degree)
        dims = cochains.cochain_dims(n, job.w, up_to_degree=limit)
        rows = [(m, d) for m, d in enumerate(dims, start=1)]
        _emit_table(rows, ("degree", "dim"), job.fmt, out)
        return 0

    if job.command == "betti":
        _emit_betti(job, job.w, out)
        return 0

    if job.command == "report":
        for w in (2, 4, 6):
            if job.fmt == "text":
                out.write(f"weight {w}\n")
            _emit_betti(job, w, out)
        return 0

    raise ValueError(f"unknown command {job.command}")


def _weight_limit(n, w, max_degree):
    """Degree cap: the weight-6 degree-6 slot is a multi-hour computation,
    so it only runs when asked for explicitly via --max-degree."""
    if max_degree is not None:
        return min(max_degree, cochains.max_degree(w))
    if n == 3 and w >= 6:
        print(
            f"gkf: stopping at degree 5 for weight {w} "
            f"(pass --max-degree {w} for the large-scale slot)",
            file=sys.stderr,
        )
        return 5
    return None


def _emit_betti(job, w, out):
    util.progress_enabled = True
    limit = _weight_limit(job.n, w, job.max_degree)
    cache = job.cache()
    dims = cochains.cochain_dims(job.n, w, up_to_degree=limit)
    betti = cochains.betti_numbers(
        job.n, w, up_to_degree=limit, strict_grading=job.strict_grading, cache=cache
    )
    util.progress_enabled = False
    table = [(m, dims[m - 1], betti[m]) for m in range(1, len(betti))]
    complete = len(dims) >= cochains.max_degree(w)
    euler = _euler_from_dims(dims) if complete else None
    if job.fmt == "json":
        payload = {
            "n": job.n,
            "w": w,
            "dims": dims,
            "betti": betti,
            "euler": euler,
        }
        out.write(json.dumps(payload) + "\n")
    else:
        _emit_table(table, ("degree", "dim", "betti"), job.fmt, out)
        if job.fmt == "text":
            out.write(f"b^0 = {betti[0]}\n")
            if euler is not None:
                out.write(f"euler characteristic (degrees >= 1) = {euler}\n")
            else:
                out.write(
                    f"euler characteristic needs the degree-{cochains.max_degree(w)} slot\n"
                )


def _euler_from_dims(dims):
    return sum((-1) ** m * d for m, d in enumerate(dims, start=1))


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        job = job_from_args(args)
    except (ValueError, KeyError) as exc:
        print(f"gkf: {exc}", file=sys.stderr)
        return 2
    try:
        return run(job)
    except ValueError as exc:
        print(f"gkf: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
