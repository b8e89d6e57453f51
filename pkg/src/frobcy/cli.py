"""Command-line front end.

Subcommands: ``table`` (full (a,b) tables per operator and prime, with
markdown/csv/json emission and an optional worker pool), ``frob`` (one cell
as JSON), ``wedge`` (exterior-square operator as JSON), ``congruence``
(ratio-congruence sweeps for the catalog sequences), ``classify`` (CSV sweep
over a prime range), ``legendre`` (elliptic baseline), and ``catalog``
(operator export).

Series are memoized on disk: ``cache_series`` stores the residues
c_0 .. c_N mod p^K keyed by a content hash of the operator JSON, written
atomically (temp file + rename).  A damaged or mismatched file is detected
(``CorruptCache``), silently recomputed, and overwritten.  The cache
directory comes from $FROBCY_CACHE_DIR, defaulting to the platform user
cache path; computations never depend on cache state, only their wall time
does.

``--jobs k`` parallelizes the table sweep over (operator, prime) tasks.
Each task shares its two read-only series across the row's cells, and
results are emitted in task order, so output is byte-identical to a serial
run for every k.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from typing import Dict, List, Optional, Sequence, Tuple

from .catalog import CATALOG, catalog, get_entry, sequence_terms_via_recurrence
from .classify import (PointClass, classify_ab, classify_operator,
                       results_to_csv)
from .congruence import CongruenceReport, OutsideUnitDisk, check_dwork_congruence
from .diffop import (PrecisionExhausted, ThetaOperator, TruncatedSeries,
                     solve_series, symbol_roots_mod_p)
from .frobenius import (SingularFiber, assemble_frobenius, frobenius_quartic,
                        legendre_unit_root, required_precision, unit_roots)
from .padic import PadicNumber, balanced_residue
from .wedge import wedge_square

__all__ = ["CorruptCache", "cache_series", "main"]


# -- series cache -------------------------------------------------------------------


class CorruptCache(Exception):
    """A cache file failed validation (damaged, truncated, or mismatched)."""


def _default_cache_dir() -> str:
    base = os.environ.get("FROBCY_CACHE_DIR")
    if base:
        return base
    xdg = os.environ.get("XDG_CACHE_HOME")
    if not xdg:
        xdg = os.path.join(os.path.expanduser("~"), ".cache")
    return os.path.join(xdg, "frobcy")


def _operator_hash(op: ThetaOperator) -> str:
    return hashlib.sha256(op.to_json().encode("utf-8")).hexdigest()


def _cache_path(cache_dir: str, op_hash: str, p: int, K: int, N: int) -> str:
    key = hashlib.sha256(f"{op_hash}:{p}:{K}:{N}".encode("ascii")).hexdigest()
    return os.path.join(cache_dir, f"series-{key[:40]}.json")


def _cache_load(path: str, op_hash: str, p: int, K: int, N: int) -> TruncatedSeries:
    """Validated reload; raises CorruptCache on any defect, FileNotFoundError
    on a clean miss."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    try:
        data = json.loads(raw)
        if (data["operator_hash"] != op_hash or data["p"] != p
                or data["K"] != K or data["N"] != N):
            raise CorruptCache(f"header mismatch in {path}")
        coeffs = [int(c) for c in data["coeffs"]]
        if len(coeffs) != N + 1 or coeffs[0] != 1:
            raise CorruptCache(f"bad coefficient array in {path}")
        pK = p**K
        if any(not 0 <= c < pK for c in coeffs):
            raise CorruptCache(f"residue out of range in {path}")
    except CorruptCache:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise CorruptCache(f"unreadable cache file {path}: {exc}") from None
    return TruncatedSeries(coeffs, prime=p, cap=K, guaranteed=K)


def _cache_store(path: str, op_hash: str, p: int, K: int, N: int,
                 series: TruncatedSeries) -> None:
    """Atomic write: temp file in the same directory, then rename."""
    payload = {
        "operator_hash": op_hash, "p": p, "K": K, "N": N,
        "coeffs": [str(c) for c in series.coeffs],
    }
    directory = os.path.dirname(path)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def cache_series(op: ThetaOperator, p: int, K: int, N: int,
                 cache_dir: Optional[str] = None) -> TruncatedSeries:
    """Residues c_0 .. c_N mod p^K of the normalized solution, memoized.

    The key is a content hash of the operator JSON together with (p, K, N);
    changing any operator coefficient changes the key.  A valid cache file is
    reloaded without recomputation; a corrupt one is silently recomputed and
    overwritten.  If the cache directory cannot be used at all, the series is
    simply computed and returned uncached.
    """
    directory = cache_dir if cache_dir is not None else _default_cache_dir()
    op_hash = _operator_hash(op)
    try:
        os.makedirs(directory, exist_ok=True)
        path = _cache_path(directory, op_hash, p, K, N)
    except OSError:
        return solve_series(op, N, p=p, K=K)
    try:
        return _cache_load(path, op_hash, p, K, N)
    except FileNotFoundError:
        pass
    except (CorruptCache, OSError):
        pass  # silent recompute below; the fresh write replaces the bad file
    series = solve_series(op, N, p=p, K=K)
    try:
        _cache_store(path, op_hash, p, K, N, series)
    except OSError:
        pass  # caching is best-effort; the result is still correct
    return series


# -- shared computation helpers --------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _check_prime(p: int) -> int:
    if p < 3 or not _is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    return p


def _parse_primes(text: str) -> List[int]:
    """Accept '3..17' (all odd primes in the range) or '3,5,7' / '7'."""
    text = text.strip()
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
        primes = [p for p in range(max(lo, 3), hi + 1) if _is_prime(p)]
        if not primes:
            raise ValueError(f"no odd primes in range {text!r}")
        return primes
    return [_check_prime(int(part)) for part in text.split(",") if part.strip()]


def _load_operator(spec: str) -> ThetaOperator:
    """Catalog name, or path to a JSON operator file."""
    if spec in CATALOG:
        return get_entry(spec).operator
    if os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as fh:
            return ThetaOperator.from_json(fh.read())
    raise ValueError(
        f"unknown operator {spec!r}: not a catalog name and not a file"
    )


def _row_series(op: ThetaOperator, p: int, use_cache: bool,
                cache_dir: Optional[str],
                s: Optional[int] = None
                ) -> Tuple[int, TruncatedSeries, TruncatedSeries, ThetaOperator]:
    """(s, f0, F0, wedge_op) at the working precision for one (op, p) row."""
    roots = symbol_roots_mod_p(op, p)
    if s is None:
        s = required_precision(p, want_singular=bool(roots))
    N = p**s - 1
    wop = wedge_square(op)
    if use_cache:
        f0 = cache_series(op, p, s, N, cache_dir)
        F0 = cache_series(wop, p, s, N, cache_dir)
    else:
        f0 = solve_series(op, N, p=p, K=s)
        F0 = solve_series(wop, N, p=p, K=s)
    return s, f0, F0, wop


def _classified_row(op: ThetaOperator, p: int, use_cache: bool,
                    cache_dir: Optional[str]) -> List[PointClass]:
    s, f0, F0, wop = _row_series(op, p, use_cache, cache_dir)
    return classify_operator(op, p, wedge_op=wop, s=s, f0=f0, F0=F0)


def _table_task(arg: Tuple[str, int, bool, Optional[str]]
                ) -> Tuple[List[PointClass], Optional[str]]:
    """Worker: one (operator, prime) row; never raises (errors are data)."""
    op_json, p, use_cache, cache_dir = arg
    op = ThetaOperator.from_json(op_json)
    try:
        return _classified_row(op, p, use_cache, cache_dir), None
    except Exception as exc:  # noqa: BLE001 - reported as a diagnostic
        label = op.name or "operator"
        return [], f"{label} p={p}: {type(exc).__name__}: {exc}"


def _padic_json(x: PadicNumber) -> Dict[str, int]:
    return {"prime": x.prime, "precision": x.guaranteed, "residue": x.residue}


# -- emission -----------------------------------------------------------------------


def _markdown_tables(groups: Sequence[Tuple[str, int, List[PointClass]]]) -> str:
    lines: List[str] = []
    for name, p, rows in groups:
        lines.append(f"## {name}, p = {p}")
        lines.append("")
        lines.append("| z | " + " | ".join(str(r.z0) for r in rows) + " |")
        lines.append("|---" * (len(rows) + 1) + "|")
        lines.append("| (a,b) | " + " | ".join(r.cell() for r in rows) + " |")
        lines.append("")
    return "\n".join(lines)


def _json_tables(groups: Sequence[Tuple[str, int, List[PointClass]]]) -> str:
    out: Dict[str, Dict[str, Dict[str, str]]] = {}
    for name, p, rows in groups:
        out.setdefault(name, {})[str(p)] = {str(r.z0): r.cell() for r in rows}
    return json.dumps(out, indent=1)


def _emit(text: str, output: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands --------------------------------------------------------------------


def cmd_table(args: argparse.Namespace) -> int:
    names = args.operator or list(CATALOG)
    if names == ["all"]:
        names = list(CATALOG)
    try:
        ops = [(n, _load_operator(n)) for n in names]
        primes = _parse_primes(args.primes)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    cache_dir = args.cache_dir
    use_cache = not args.no_cache
    tasks = [(op.to_json(), p, use_cache, cache_dir)
             for _n, op in ops for p in primes]

    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_table_task, tasks))
    else:
        outcomes = [_table_task(t) for t in tasks]

    groups: List[Tuple[str, int, List[PointClass]]] = []
    errors: List[str] = []
    idx = 0
    for name, _op in ops:
        for p in primes:
            rows, err = outcomes[idx]
            idx += 1
            if err is not None:
                errors.append(err)
            else:
                groups.append((name, p, rows))

    if args.format == "markdown":
        text = _markdown_tables(groups)
    elif args.format == "json":
        text = _json_tables(groups)
    else:
        text = results_to_csv([r for _n, _p, rows in groups for r in rows])
    _emit(text, args.output)

    for err in errors:
        print(f"error: {err}", file=sys.stderr)
    return 1 if errors else 0


def cmd_frob(args: argparse.Namespace) -> int:
    try:
        op = _load_operator(args.operator)
        p = _check_prime(args.prime)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    z0 = args.point % p
    if z0 == 0:
        print("error: the point must be nonzero mod p", file=sys.stderr)
        return 2
    fiber = z0 in set(symbol_roots_mod_p(op, p))
    try:
        s, f0, F0, _wop = _row_series(op, p, not args.no_cache, args.cache_dir,
                                      s=args.precision)
    except PrecisionExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    result: Dict[str, object] = {
        "operator": op.name or args.operator, "p": p, "z": z0, "precision": s,
    }
    try:
        r1, rh = unit_roots(f0, F0, z0, p, s)
    except OutsideUnitDisk:
        result.update(status="undefined", a=None, b=None, r1=None, rh=None,
                      cell="-")
        print(json.dumps(result, indent=1))
        return 0
    a, b = assemble_frobenius(r1, rh, p, at_singular_fiber=fiber)
    pc = classify_ab(a, b, p, fiber)
    result.update(
        status=pc.status, a=a, b=b,
        alpha=pc.alpha, beta=pc.beta, chi=pc.chi, ap=pc.ap, form=pc.form,
        quartic=frobenius_quartic(a, b, p), cell=pc.cell(),
        r1=_padic_json(r1), rh=_padic_json(rh),
    )
    print(json.dumps(result, indent=1))
    return 0


def cmd_wedge(args: argparse.Namespace) -> int:
    try:
        op = _load_operator(args.operator)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(wedge_square(op).to_json())
    return 0


def _report_json(r: CongruenceReport) -> Dict[str, object]:
    return {
        "power": r.power, "n_max": r.n_max, "checked": r.checked,
        "skipped": r.skipped,
        "failures": [{"n": n, "got": got, "expected": want}
                     for n, got, want in r.failures],
        "ok": r.ok, "summary": r.summary(),
    }


def cmd_congruence(args: argparse.Namespace) -> int:
    name = args.sequence
    try:
        p = _check_prime(args.prime)
        if name in CATALOG:
            series = solve_series(get_entry(name).operator, args.nmax)
            coeffs: Sequence[int] = series.coeffs
        else:
            coeffs = sequence_terms_via_recurrence(name, args.nmax)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    reports = [check_dwork_congruence(coeffs, p, s, args.nmax)
               for s in range(1, args.smax + 1)]
    payload = {
        "sequence": name, "prime": p, "n_max": args.nmax,
        "reports": [_report_json(r) for r in reports],
        "ok": all(r.ok for r in reports),
    }
    print(json.dumps(payload, indent=1))
    return 0 if payload["ok"] else 1


def cmd_classify(args: argparse.Namespace) -> int:
    try:
        op = _load_operator(args.operator)
        primes = _parse_primes(args.primes)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rows: List[PointClass] = []
    for p in primes:
        try:
            rows.extend(_classified_row(op, p, not args.no_cache, args.cache_dir))
        except PrecisionExhausted as exc:
            print(f"error: p={p}: {exc}", file=sys.stderr)
            return 1
    _emit(results_to_csv(rows), args.output)
    return 0


def cmd_legendre(args: argparse.Namespace) -> int:
    try:
        p = _check_prime(args.prime)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    result: Dict[str, object] = {"p": p, "s0": args.point % p}
    try:
        root = legendre_unit_root(p, args.point)
    except SingularFiber as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OutsideUnitDisk:
        result.update(status="supersingular", pi=None, ap=None,
                      zeta_numerator=None)
        print(json.dumps(result, indent=1))
        return 0
    ps = root.modulus
    ap = balanced_residue((root.residue + p * pow(root.residue, -1, ps)) % ps,
                          ps)
    result.update(status="ordinary", pi=_padic_json(root), ap=ap,
                  zeta_numerator=[1, -ap, p])
    print(json.dumps(result, indent=1))
    return 0


def cmd_catalog(args: argparse.Namespace) -> int:
    if args.list:
        entries = [json.loads(e.operator.to_json()) for e in catalog()]
        print(json.dumps(entries, indent=1))
        return 0
    for e in catalog():
        points = ", ".join(str(x) for x in e.singular_points) or "none"
        special = "".join(f"  [{pt}: {label}]"
                          for pt, label in sorted(e.special_points.items()))
        print(f"{e.name}  #{e.aesz}  order {e.operator.theta_order} "
              f"degree {e.operator.z_degree}  symbol roots: {points}{special}")
    return 0


# -- argument parsing ----------------------------------------------------------------


def _add_cache_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--no-cache", action="store_true",
                    help="recompute series without touching the disk cache")
    sp.add_argument("--cache-dir", default=None,
                    help="cache directory (default: $FROBCY_CACHE_DIR or the "
                         "user cache path)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobcy",
        description="Degree-four Frobenius polynomials of fourth-order "
                    "Calabi-Yau operators by the p-adic unit-root method.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("table", help="full (a,b) tables per operator and prime")
    sp.add_argument("--operator", action="append",
                    help="catalog name or operator JSON file (repeatable; "
                         "default: every catalog operator)")
    sp.add_argument("--primes", default="3..17",
                    help="prime range '3..17' or list '3,5,7' (default 3..17)")
    sp.add_argument("--format", choices=("markdown", "csv", "json"),
                    default="markdown")
    sp.add_argument("--jobs", type=int, default=1,
                    help="worker processes (output independent of the value)")
    sp.add_argument("--output", default=None, help="write to file, not stdout")
    _add_cache_flags(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("frob", help="one Frobenius cell as JSON")
    sp.add_argument("--operator", required=True)
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--point", type=int, required=True)
    sp.add_argument("--precision", type=int, default=None)
    _add_cache_flags(sp)
    sp.set_defaults(func=cmd_frob)

    sp = sub.add_parser("wedge", help="exterior-square operator as JSON")
    sp.add_argument("--operator", required=True)
    sp.set_defaults(func=cmd_wedge)

    sp = sub.add_parser("congruence", help="ratio-congruence sweep as JSON")
    sp.add_argument("--sequence", required=True,
                    help="sequence name (A-D, a-j) or catalog operator")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--nmax", type=int, default=2000)
    sp.add_argument("--smax", type=int, default=3)
    sp.set_defaults(func=cmd_congruence)

    sp = sub.add_parser("classify", help="CSV classification sweep")
    sp.add_argument("--operator", required=True)
    sp.add_argument("--primes", default="3..17")
    sp.add_argument("--output", default=None)
    _add_cache_flags(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("legendre", help="elliptic baseline a_p as JSON")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--point", type=int, required=True)
    sp.set_defaults(func=cmd_legendre)

    sp = sub.add_parser("catalog", help="operator catalog")
    sp.add_argument("--list", action="store_true",
                    help="emit every operator in the JSON interchange format")
    sp.set_defaults(func=cmd_catalog)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
