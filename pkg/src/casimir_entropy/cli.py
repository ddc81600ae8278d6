"""Command-line front end: figures, sweeps, single-point entropy, validation.

Exit codes: 0 success, 1 validation failure, 2 usage or configuration
error, 3 numerical failure. The worker count for figures and sweeps comes
from ``--workers`` or the environment variable ``CASIMIR_WORKERS``
(default 1); output rows are always written in grid order.
"""
import argparse
import csv
import io
import logging
import multiprocessing
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__, config, targets
from .errors import AccuracyError, CasimirError, ConfigError, DomainError, UnsupportedModelError
from .figures import FIGURES, figure_row

log = logging.getLogger("casimir_entropy")

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
FLOAT_FORMAT = "%.12e"
WORKERS_ENV = "CASIMIR_WORKERS"
_USAGE_ERRORS = (ConfigError, DomainError, UnsupportedModelError)


# --- worker pool ---------------------------------------------------------------

def worker_count(explicit=None):
    """Workers from the argument, else ``CASIMIR_WORKERS``, else 1."""
    if explicit is not None:
        n = explicit
    else:
        text = os.environ.get(WORKERS_ENV, "1").strip() or "1"
        try:
            n = int(text)
        except ValueError:
            raise ConfigError(f"{WORKERS_ENV} must be an integer, got {text!r}") from None
    if n < 1:
        raise ConfigError("the worker count must be >= 1")
    return n


def ordered_map(fn, items, workers):
    """Lazily yield ``fn(item)`` in input order, computed by ``workers`` processes."""
    items = list(items)
    if workers == 1 or len(items) <= 1:
        yield from map(fn, items)
        return
    ctx = multiprocessing.get_context("fork") if hasattr(os, "fork") else None
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        yield from pool.map(fn, items)


# --- CSV -----------------------------------------------------------------------

def _fmt(value):
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    return str(value)


def _metadata(lines):
    return "".join(f"# {line}\n" for line in lines)


def _figure_point(args):
    fig_id, x = args
    return figure_row(fig_id, x)


def figure_text(fig_id, workers=1):
    """Complete CSV text of one figure."""
    job = FIGURES[fig_id][0]
    buf = io.StringIO()
    buf.write(_metadata([f"casimir-entropy {__version__}", f"figure = {job.id}", f"title = {job.title}",
                         f"abscissa = {job.abscissa}", f"points = {len(job.grid)}",
                         *(f"note = {n}" for n in job.notes)]))
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow((job.abscissa,) + job.columns)
    for x, row in zip(job.grid, ordered_map(_figure_point, [(fig_id, x) for x in job.grid], workers)):
        writer.writerow([_fmt(float(x))] + [_fmt(v) for v in row])
    return buf.getvalue()


def figure_bytes(fig_id, workers=1):
    return figure_text(fig_id, workers).encode()


def _write_atomic(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    try:
        tmp.write_text(text)
        tmp.replace(path)
    finally:
        if tmp.exists():
            tmp.unlink()


def run_figure(fig_id, output, workers=1):
    """Write figure ``fig_id`` as CSV to ``output`` (no file is left on failure)."""
    _write_atomic(output, figure_text(fig_id, workers))
    return Path(output)


# --- sweeps --------------------------------------------------------------------

def _sweep_row(args):
    target, model_kind, geometry_kind, params = args
    try:
        return targets.evaluate(target, model_kind, geometry_kind, params), ""
    except (CasimirError, ArithmeticError, ValueError) as exc:
        return None, f"{type(exc).__name__}: {exc}"


def _sweep_header(spec):
    fixed = sorted((k, v) for k, v in spec.params.items() if k not in dict(spec.grid))
    lines = [f"casimir-entropy {__version__}", f"target = {spec.target}",
             f"model = {spec.model_kind}", f"geometry = {spec.geometry_kind}",
             *(f"param {k} = {_fmt(v)}" for k, v in fixed),
             *(f"grid {k} = {len(v)} values" for k, v in spec.grid),
             f"fingerprint = {spec.fingerprint()}"]
    return _metadata(lines)


def _existing_rows(path, header):
    """Data lines of a previous (partial) run with the same header, else []."""
    if not path.exists():
        return []
    text = path.read_text()
    if not text.startswith(header):
        return []
    body = text[len(header):].splitlines(keepends=True)
    # drop the column header and a possibly truncated last line
    rows = [r for r in body[1:] if r.endswith("\n")]
    return rows


def run_sweep(spec, workers=1, force=False):
    """Evaluate ``spec`` on its grid and write the CSV; returns (path, n_errors, skipped).

    A complete output with the same fingerprint is kept unless ``force``.
    Rows are appended to ``<output>.partial`` as they finish (in grid order),
    so an interrupted sweep resumes where it stopped.
    """
    out = Path(spec.output)
    header = _sweep_header(spec)
    if not force and out.exists() and out.read_text().startswith(header):
        return out, 0, True
    partial = out.with_name(out.name + ".partial")
    done = [] if force else _existing_rows(partial, header)
    names = [k for k, _ in spec.grid]
    cols = list(names) + list(targets.columns(spec.target)) + ["error"]
    out.parent.mkdir(parents=True, exist_ok=True)
    rows = list(spec.rows)
    errors = sum(1 for r in done if not r.rstrip("\n").endswith(","))
    with open(partial, "w") as fh:
        fh.write(header)
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(cols)
        fh.writelines(done)
        fh.flush()
        todo = [(spec.target, spec.model_kind, spec.geometry_kind, r) for r in rows[len(done):]]
        for params, (values, err) in zip(rows[len(done):], ordered_map(_sweep_row, todo, workers)):
            cells = [_fmt(params[k]) for k in names]
            if values is None:
                errors += 1
                cells += ["nan"] * len(targets.columns(spec.target))
            else:
                cells += [_fmt(values[c]) for c in targets.columns(spec.target)]
            writer.writerow(cells + [err])
            fh.flush()
    partial.replace(out)
    return out, errors, False


# --- entropy -------------------------------------------------------------------

def entropy_report(path):
    """Text report (``key = value`` lines) for a single-point configuration."""
    model_kind, geometry_kind, params = config.load_system(path)
    b = targets.evaluate("entropy", model_kind, geometry_kind, params)
    lines = [f"model = {model_kind}", f"geometry = {geometry_kind}", f"T = {_fmt(params['T'])}",
             f"s0 = {_fmt(b['s0'])}", f"s1 = {_fmt(b['s1'])}", f"total = {_fmt(b['total'])}",
             f"diverges = {_fmt(b['diverges'])}"]
    try:
        r = targets.evaluate("residual_entropy", model_kind, geometry_kind, params)
        lines.append(f"residual = {_fmt(r['value'])}")
    except CasimirError as exc:
        lines.append(f"residual = unavailable ({type(exc).__name__})")
    return "\n".join(lines) + "\n"


# --- argument parsing ----------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="casimir-entropy",
        description="Low-temperature Casimir free energy and entropy for plates and ball-plane.",
        epilog=f"Exit codes: 0 ok, 1 validation failure, 2 usage, 3 numerical failure. "
               f"{WORKERS_ENV} sets the default worker count.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", help="write one figure panel as CSV")
    fig.add_argument("id", choices=sorted(FIGURES), help="figure id")
    fig.add_argument("-o", "--output", help="output path (default: <id>.csv)")
    fig.add_argument("-w", "--workers", type=int, help=f"worker processes (default ${WORKERS_ENV} or 1)")

    sw = sub.add_parser("sweep", help="evaluate a target on a parameter grid",
                        formatter_class=argparse.RawDescriptionHelpFormatter,
                        description="Configuration keys:\n" + config.HELP
                        + "\nTargets: " + ", ".join(targets.TARGETS))
    sw.add_argument("config", help="configuration file")
    sw.add_argument("-o", "--output", help="override [sweep] output")
    sw.add_argument("-w", "--workers", type=int, help=f"worker processes (default ${WORKERS_ENV} or 1)")
    sw.add_argument("--force", action="store_true", help="recompute even if a complete output exists")

    en = sub.add_parser("entropy", help="entropy breakdown for a single configuration",
                        formatter_class=argparse.RawDescriptionHelpFormatter,
                        description="Same keys as for sweeps ([state] T is required, no [grid]):\n"
                        + config.HELP)
    en.add_argument("config", help="configuration file")

    va = sub.add_parser("validate", help="run the acceptance checks; JSON report")
    va.add_argument("-o", "--output", help="write the report here instead of stdout")
    va.add_argument("--tol", type=float, default=None, help="quadrature tolerance (default 1e-10)")
    va.add_argument("--only", help="comma-separated criterion ids (default: all)")
    return parser


def _cmd_figure(args):
    out = Path(args.output or f"{args.id}.csv")
    run_figure(args.id, out, worker_count(args.workers))
    log.info("wrote %s", out)
    return EXIT_OK


def _cmd_sweep(args):
    spec = config.load_sweep(args.config, args.output)
    path, n_err, skipped = run_sweep(spec, worker_count(args.workers), args.force)
    if skipped:
        print(f"{path}: complete output exists (use --force to recompute)", file=sys.stderr)
    elif n_err:
        print(f"{path}: {n_err} of {spec.size} rows failed (see the error column)", file=sys.stderr)
    return EXIT_OK


def _cmd_entropy(args):
    sys.stdout.write(entropy_report(args.config))
    return EXIT_OK


def _cmd_validate(args):
    from .validation import DEFAULT_TOL, report_json, run_validation

    tol = DEFAULT_TOL if args.tol is None else args.tol
    only = None
    if args.only:
        try:
            only = {int(s) for s in args.only.split(",") if s.strip()}
        except ValueError:
            raise ConfigError(f"--only expects comma-separated integers, got {args.only!r}") from None
        if not only <= set(range(1, 12)):
            raise ConfigError("criterion ids run from 1 to 11")
    results = run_validation(only, tol)
    text = report_json(results, tol)
    if args.output:
        _write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    for r in results:
        print(f"criterion {r.id:2d}: {'PASS' if r.passed else 'FAIL'}  {r.title}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION


COMMANDS = {"figure": _cmd_figure, "sweep": _cmd_sweep, "entropy": _cmd_entropy, "validate": _cmd_validate}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except _USAGE_ERRORS as exc:
        print(f"casimir-entropy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CasimirError, AccuracyError, ArithmeticError) as exc:
        print(f"casimir-entropy: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
