#!/usr/bin/env python3
"""
Command-line interface for heat kernel bounds and their verification.

Usage:
    python heatbound_cli.py list                                    # List catalog manifolds
    python heatbound_cli.py eval --manifold s2 --d 1.0 --t 0.5      # Bounds at one point
    python heatbound_cli.py sweep --manifold circle --out out.csv   # Bounds over a grid
    python heatbound_cli.py verify --suite all --manifold rn:n=2    # Run verification suites
    python heatbound_cli.py optimize-delta --manifold rn2 --d 1 --t 1 --side upper
    python heatbound_cli.py asymptotics --manifold rn2 --beta 0.4
"""

import click
import logging
import math
import sys
from typing import List, Optional, Sequence
from tabulate import tabulate
from colorama import init, Fore, Style

# Initialize colorama for cross-platform colored output
init(autoreset=True)

# Add current directory to path for imports
sys.path.insert(0, '.')

from config.catalog import CATALOG, default_grid, default_manifolds, parse_manifold
from config.settings import Settings, ToleranceConfig
from core.bounds import LiYauConstants, li_yau_bounds, lower_bound, upper_bound
from core.errors import HeatboundError, UsageError
from core.geometry import ModelManifold, point_at_distance
from core.kernels import log_heat_kernel
from core.optimize import optimize_delta
from core.report import (
    FORMATS, VERDICT_FAIL, VERDICT_PASS, SweepRecord, SweepReport, render, verdict_passes,
    write_atomic,
)
from core.utils import parse_grid, ratio_margin
from core.verify import DEFAULT_DELTAS, PathSpec, asymptotic_diagnostics, sandwich_sweep
from suites import SUITE_REGISTRY, get_suite, resolve_suites
from suites.asymptotics import DEFAULT_BETA, LARGE_TIMES, asymptotic_to_sweep

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

EXIT_VIOLATION = 1


def _tolerances(rel_tol: Optional[float], series_tol: Optional[float]) -> ToleranceConfig:
    try:
        tol = Settings().tolerances()
    except ValueError as e:
        raise UsageError(f"Bad environment configuration: {e}")
    if rel_tol is not None:
        if rel_tol < 0:
            raise UsageError("--rel-tol must be non-negative")
        tol = tol._replace(rel_tol=rel_tol)
    if series_tol is not None:
        if series_tol <= 0:
            raise UsageError("--series-tol must be positive")
        tol = tol._replace(series_tol=series_tol)
    return tol


def _threads(threads: Optional[int]) -> int:
    if threads is not None:
        if threads < 1:
            raise UsageError("--threads must be at least 1")
        return threads
    try:
        return Settings().threads
    except ValueError as e:
        raise UsageError(f"Bad environment configuration: {e}")


def _single(text: str, flag: str) -> float:
    values = parse_grid(text)
    if len(values) != 1:
        raise UsageError(f"{flag} takes a single value here, got '{text}'")
    return values[0]


def _manifolds(spec: Optional[str]) -> List[ModelManifold]:
    if not spec:
        return default_manifolds()
    return [parse_manifold(s) for s in spec.split(',') if s.strip()]


def _emit(reports: Sequence[SweepReport], fmt: str, out: Optional[str]):
    text = render(list(reports), fmt)
    if out:
        write_atomic(out, text)
    else:
        click.echo(text, nl=False)


def _summarize(reports: Sequence[SweepReport]):
    """Summary table on stderr."""
    colours = {VERDICT_PASS: Fore.GREEN, VERDICT_FAIL: Fore.RED}
    rows = []
    for r in reports:
        worst = r.worst
        verdict = f"{colours.get(r.verdict, Fore.YELLOW)}{r.verdict}{Style.RESET_ALL}"
        rows.append([r.suite, r.manifold, len(r.records), r.skipped,
                     f"{worst['margin_lower']:.3g}", f"{worst['margin_upper']:.3g}", verdict])
    headers = ['Suite', 'Manifold', 'Records', 'Skipped', 'Worst lower', 'Worst upper', 'Verdict']
    click.echo(tabulate(rows, headers=headers, tablefmt='grid'), err=True)


def _finish(reports: Sequence[SweepReport]):
    """Exit 1 when any hard report failed."""
    failed = [r for r in reports if r.verdict == VERDICT_FAIL]
    if failed:
        click.echo(f"{Fore.RED}✗ {len(failed)} report(s) found violations{Style.RESET_ALL}", err=True)
        sys.exit(EXIT_VIOLATION)
    click.echo(f"{Fore.GREEN}✓ No violations{Style.RESET_ALL}", err=True)


def _guarded(action):
    """Run a command body, mapping package errors to their exit codes."""
    try:
        action()
    except HeatboundError as e:
        click.echo(f"{Fore.RED}Error: {e}{Style.RESET_ALL}", err=True)
        sys.exit(e.exit_code)
    except Exception:
        logger.exception("Unexpected failure")
        sys.exit(3)


def output_options(default_format: str):
    def decorate(func):
        func = click.option('--threads', type=int, help='Worker threads (default: HEATBOUND_THREADS)')(func)
        func = click.option('--series-tol', type=float, help='Series truncation tolerance')(func)
        func = click.option('--rel-tol', type=float, help='Relative slack of every inequality')(func)
        func = click.option('--format', 'fmt', type=click.Choice(FORMATS), default=default_format,
                            help=f'Output format (default: {default_format})')(func)
        func = click.option('--out', help='Write output atomically to this path')(func)
        return func
    return decorate


@click.group()
def cli():
    """Heatbound CLI - evaluate and verify Gaussian heat kernel bounds."""
    pass


@cli.command('list')
def list_manifolds():
    """List the catalog manifolds and their default grids."""
    click.echo(f"\n{Fore.CYAN}{'='*80}{Style.RESET_ALL}")
    click.echo(f"{Fore.CYAN}Catalog Manifolds{Style.RESET_ALL}")
    click.echo(f"{Fore.CYAN}{'='*80}{Style.RESET_ALL}\n")

    table_data = []
    for key, entry in CATALOG.items():
        table_data.append([key, entry.spec, entry.description, entry.default_d, entry.default_t])

    headers = ['Key', 'Spec', 'Description', 'Default d', 'Default t']
    click.echo(tabulate(table_data, headers=headers, tablefmt='grid'))

    click.echo(f"\n{Fore.GREEN}Usage examples:{Style.RESET_ALL}")
    click.echo("  python heatbound_cli.py eval --manifold s2 --d 1.0 --t 0.5 --delta 1")
    click.echo("  python heatbound_cli.py verify --suite sandwich --manifold circle")
    click.echo("  python heatbound_cli.py verify --suite all")
    click.echo()


@cli.command('eval')
@click.option('--manifold', '-m', required=True, help='Manifold spec, e.g. rn:n=2, s2, prod:rn:n=1+circle:L=2pi')
@click.option('--d', 'd_text', required=True, help='Geodesic distance')
@click.option('--t', 't_text', required=True, help='Time')
@click.option('--delta', 'delta_text', default='1', help='Comma-separated delta values (default: 1)')
@click.option('--symmetric', is_flag=True, help='Use the symmetric volume factor')
@click.option('--c1', type=float, help='Li-Yau c1 (adds illustrative Li-Yau bounds)')
@click.option('--c2', type=float, help='Li-Yau c2 (adds illustrative Li-Yau bounds)')
@output_options('json')
def eval_bounds(manifold, d_text, t_text, delta_text, symmetric, c1, c2,
                out, fmt, rel_tol, series_tol, threads):
    """Evaluate lower bound, heat kernel and upper bound at one point."""

    def action():
        tol = _tolerances(rel_tol, series_tol)
        m = parse_manifold(manifold)
        d, t = _single(d_text, '--d'), _single(t_text, '--t')
        x = m.base_point()
        y = point_at_distance(m, x, d)
        log_h = log_heat_kernel(m, x, y, t, tol)
        records = []
        for delta in parse_grid(delta_text):
            lower = lower_bound(m, x, y, t, delta, symmetric, tol)
            upper = upper_bound(m, x, y, t, delta, symmetric, tol)
            margin_lower = ratio_margin(lower.log_value, log_h)
            margin_upper = ratio_margin(log_h, upper.log_value)
            records.append(SweepRecord(
                m.tag, m.dimension, d, t, delta, lower.value, math.exp(log_h), upper.value,
                margin_lower, margin_upper, verdict_passes(margin_lower, margin_upper, tol.rel_tol),
            ))
        notes = []
        if c1 is not None or c2 is not None:
            consts = LiYauConstants(c1 if c1 is not None else 1.0, c2 if c2 is not None else 1.0)
            ly_lower, ly_upper = li_yau_bounds(m, x, y, t, consts, tol)
            notes.append(f"li_yau lower={ly_lower.value:.12g} upper={ly_upper.value:.12g} "
                         f"(illustrative, c1={consts.c1:g}, c2={consts.c2:g})")
        report = SweepReport(
            suite='eval', manifold=m.tag,
            grid={'d': [d], 't': [t], 'delta': list(parse_grid(delta_text)), 'symmetric': symmetric},
            records=tuple(records), rel_tol=tol.rel_tol, notes=tuple(notes),
        )
        _emit([report], fmt, out)
        if report.verdict == VERDICT_FAIL:
            sys.exit(EXIT_VIOLATION)

    _guarded(action)


@cli.command()
@click.option('--manifold', '-m', required=True, help='Manifold spec or catalog key')
@click.option('--d', 'd_text', help='Distance grid (default: catalog grid)')
@click.option('--t', 't_text', help='Time grid, e.g. log:0.01:1000:25 (default: catalog grid)')
@click.option('--delta', 'delta_text', help='Comma-separated delta set (default: 0.1,0.5,1,2,10)')
@click.option('--symmetric', is_flag=True, help='Use the symmetric volume factors')
@output_options('csv')
def sweep(manifold, d_text, t_text, delta_text, symmetric, out, fmt, rel_tol, series_tol, threads):
    """Check lower_bound <= H <= upper_bound over a (d, t) grid."""

    def action():
        tol = _tolerances(rel_tol, series_tol)
        m = parse_manifold(manifold)
        d_grid, t_grid = default_grid(m)
        report, _ = sandwich_sweep(
            m,
            parse_grid(d_text) if d_text else d_grid,
            parse_grid(t_text) if t_text else t_grid,
            parse_grid(delta_text) if delta_text else DEFAULT_DELTAS,
            tol=tol, threads=_threads(threads), symmetric=symmetric,
        )
        _emit([report], fmt, out)
        _summarize([report])
        _finish([report])

    _guarded(action)


@cli.command()
@click.option('--suite', '-s', default='all',
              help=f"Suite name, comma-separated list or 'all' ({', '.join(SUITE_REGISTRY)})")
@click.option('--manifold', '-m', help='Comma-separated manifold specs (default: whole catalog)')
@click.option('--d', 'd_text', help='Override the distance grid')
@click.option('--t', 't_text', help='Override the time grid')
@click.option('--delta', 'delta_text', help='Override the delta set (sandwich)')
@click.option('--alpha', 'alpha_text', help='Override the alpha set (gradient)')
@output_options('json')
def verify(suite, manifold, d_text, t_text, delta_text, alpha_text,
           out, fmt, rel_tol, series_tol, threads):
    """Run verification suites on catalog manifolds."""

    def action():
        tol = _tolerances(rel_tol, series_tol)
        names = resolve_suites(suite)
        manifolds = _manifolds(manifold)
        options = {}
        for key, text in (('d', d_text), ('t', t_text), ('delta', delta_text), ('alpha', alpha_text)):
            if text:
                options[key] = parse_grid(text)
        n_threads = _threads(threads)

        reports: List[SweepReport] = []
        for name in names:
            click.echo(f"\n{Fore.GREEN}{'='*80}{Style.RESET_ALL}", err=True)
            click.echo(f"{Fore.GREEN}Suite: {name}{Style.RESET_ALL}", err=True)
            click.echo(f"{Fore.GREEN}{'='*80}{Style.RESET_ALL}", err=True)
            result = get_suite(name, manifolds, tol, n_threads, options).execute()
            reports.extend(result.reports)

        _emit(reports, fmt, out)
        _summarize(reports)
        _finish(reports)

    _guarded(action)


@cli.command('optimize-delta')
@click.option('--manifold', '-m', required=True, help='Manifold spec or catalog key')
@click.option('--d', 'd_text', required=True, help='Geodesic distance')
@click.option('--t', 't_text', required=True, help='Time')
@click.option('--side', type=click.Choice(['lower', 'upper']), required=True,
              help='Maximize the lower bound or minimize the upper bound')
@click.option('--symmetric', is_flag=True, help='Use the symmetric volume factor')
@output_options('json')
def optimize_delta_command(manifold, d_text, t_text, side, symmetric,
                           out, fmt, rel_tol, series_tol, threads):
    """Find the delta giving the tightest bound on one side."""

    def action():
        tol = _tolerances(rel_tol, series_tol)
        m = parse_manifold(manifold)
        d, t = _single(d_text, '--d'), _single(t_text, '--t')
        x = m.base_point()
        y = point_at_distance(m, x, d)
        log_h = log_heat_kernel(m, x, y, t, tol)
        best = optimize_delta(m, x, y, t, side, tol, symmetric)
        if side == 'lower':
            lower, upper = best.value, None
            margin_lower, margin_upper = ratio_margin(best.bound.log_value, log_h), None
        else:
            lower, upper = None, best.value
            margin_lower, margin_upper = None, ratio_margin(log_h, best.bound.log_value)
        record = SweepRecord(m.tag, m.dimension, d, t, best.delta, lower, math.exp(log_h), upper,
                             margin_lower, margin_upper,
                             verdict_passes(margin_lower, margin_upper, tol.rel_tol))
        notes = ('optimum at the edge of the delta range',) if best.at_boundary else ()
        report = SweepReport(
            suite=f"optimize-delta:{side}", manifold=m.tag,
            grid={'d': [d], 't': [t], 'symmetric': symmetric}, records=(record,),
            rel_tol=tol.rel_tol, notes=notes,
        )
        _emit([report], fmt, out)

    _guarded(action)


@cli.command()
@click.option('--manifold', '-m', required=True, help='Manifold spec or catalog key')
@click.option('--beta', type=float, default=DEFAULT_BETA, help=f'Path exponent (default: {DEFAULT_BETA})')
@click.option('--scale', type=float, default=1.0, help='Path scale, d(t) = scale * t^beta')
@click.option('--t', 't_text', default=LARGE_TIMES, help=f'Time grid (default: {LARGE_TIMES})')
@output_options('json')
def asymptotics(manifold, beta, scale, t_text, out, fmt, rel_tol, series_tol, threads):
    """Tabulate the large-time behaviour along d(t) = scale * t^beta."""

    def action():
        tol = _tolerances(rel_tol, series_tol)
        m = parse_manifold(manifold)
        t_grid = parse_grid(t_text)
        report = asymptotic_to_sweep(
            asymptotic_diagnostics(m, PathSpec(beta, scale), t_grid, tol), m, t_grid)
        _emit([report], fmt, out)
        _summarize([report])
        _finish([report])

    _guarded(action)


@cli.command()
def info():
    """Display the active tolerances and parallelism."""
    click.echo(f"\n{Fore.CYAN}{'='*80}{Style.RESET_ALL}")
    click.echo(f"{Fore.CYAN}Heatbound - Configuration Info{Style.RESET_ALL}")
    click.echo(f"{Fore.CYAN}{'='*80}{Style.RESET_ALL}\n")

    def action():
        settings = Settings()
        tol = settings.tolerances()
        click.echo(f"{Fore.GREEN}Tolerances:{Style.RESET_ALL}")
        for field, value in tol._asdict().items():
            click.echo(f"  {field}: {value:g}")

        click.echo(f"\n{Fore.GREEN}Parallelism:{Style.RESET_ALL}")
        click.echo(f"  Threads: {settings.threads}")

        click.echo(f"\n{Fore.GREEN}Catalog:{Style.RESET_ALL}")
        click.echo(f"  Total: {len(CATALOG)} manifolds, {len(SUITE_REGISTRY)} suites")
        click.echo()

    try:
        action()
    except ValueError as e:
        click.echo(f"{Fore.RED}Error: Bad environment configuration: {e}{Style.RESET_ALL}", err=True)
        sys.exit(UsageError.exit_code)


if __name__ == '__main__':
    cli()
