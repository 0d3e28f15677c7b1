#!/usr/bin/env python3
"""
Main CLI interface for fhe-keygen.

Subcommands: keygen, verify, experiment, bench and hnf. Exit codes: 0 on
success, 1 when validation fails or key generation gives up, 2 on usage
errors and malformed input files.

Author: fhe-keygen developers
Version: 1.0
"""

import sys
from math import prod
from typing import NoReturn, Optional

import click
from colorama import Fore, Style, init

from .. import __version__
from ..core.config import KeygenConfig, setup_logging
from ..core.errors import (
    ConfigurationError,
    InvalidParametersError,
    KeyFileError,
    KeygenError,
    SingularMatrixError,
)
from ..core.hnf import check_divisibility_structure, hnf_of, is_simple_hnf
from ..core.keyfile import KeyRecord, format_key, read_key_file, write_key_file
from ..core.keygen import ALGORITHMS, ODD_STRATEGIES, generate_keys, validate_key
from ..core.ring import RingParams, set_kronecker_threshold
from ..harness.benchmark import run_timing_benchmark
from ..harness.experiment import run_category_experiment
from ..harness.serialization import (
    categories_to_csv,
    categories_to_json,
    format_matrix,
    format_poly,
    parse_matrix,
    parse_poly,
    read_text,
    timing_to_csv,
    timing_to_json,
    write_text,
)

# Initialize colorama for cross-platform colored output
init()

EXIT_FAILURE = 1
EXIT_USAGE = 2


def print_success(message: str) -> None:
    """Print a success message in green."""
    click.echo(f"{Fore.GREEN}✓ {message}{Style.RESET_ALL}")


def print_error(message: str) -> None:
    """Print an error message in red."""
    click.echo(f"{Fore.RED}✗ {message}{Style.RESET_ALL}", err=True)


def print_info(message: str) -> None:
    """Print an info message in blue."""
    click.echo(f"{Fore.BLUE}ℹ {message}{Style.RESET_ALL}")


def print_check(name: str, passed: bool, detail: str = "") -> None:
    if passed:
        click.echo(f"{Fore.GREEN}✓ {name}{Style.RESET_ALL}")
    else:
        suffix = f": {detail}" if detail else ""
        click.echo(f"{Fore.RED}✗ {name} FAILED{suffix}{Style.RESET_ALL}")


def _emit(text: str, out: Optional[str], what: str) -> None:
    """Write text to ``out`` or, without one, to stdout."""
    if out:
        write_text(out, text)
        print_success(f"Wrote {what} to {out}")
    else:
        click.echo(text, nl=False)


def _fail(ctx: click.Context, message: str, code: int = EXIT_FAILURE) -> NoReturn:
    print_error(message)
    if ctx.obj.get("verbose"):
        import traceback

        traceback.print_exc()
    sys.exit(code)


@click.group()
@click.version_option(version=__version__, prog_name="fhe-keygen")
@click.option(
    "--config",
    "config_file",
    type=click.Path(dir_okay=False),
    help="Configuration file (default: .fhe-keygen/config.yml in the project root)",
)
@click.option("--verbose", "-v", is_flag=True, help="Enable debug logging")
@click.pass_context
def cli(ctx: click.Context, config_file: Optional[str], verbose: bool) -> None:
    """
    fhe-keygen - key generation for Gentry's FHE scheme over Z[x]/(x^n + 1).

    Generates and verifies keys with the Gentry-Halevi algorithm (gh) or the
    odd-determinant variant (ours), and reproduces the category and timing
    experiments comparing them.
    """
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    try:
        config = KeygenConfig(config_file=config_file)
    except ConfigurationError as e:
        _fail(ctx, f"Invalid configuration: {e}", EXIT_USAGE)
    setup_logging(config, verbose=verbose)
    set_kronecker_threshold(config.kronecker_threshold)
    ctx.obj["config"] = config


@cli.command()
@click.option(
    "--algo",
    type=click.Choice(ALGORITHMS),
    required=True,
    help="Key generation algorithm",
)
@click.option(
    "--n", "n", type=int, required=True, help="Ring dimension (power of two)"
)
@click.option("--t", "t", type=int, required=True, help="Coefficient bit length")
@click.option(
    "--seed", type=int, default=0, show_default=True, help="64-bit master seed"
)
@click.option(
    "--out", type=click.Path(dir_okay=False), help="Key file (default: stdout)"
)
@click.option(
    "--public-out",
    type=click.Path(dir_okay=False),
    help="Also write the public key here",
)
@click.option(
    "--generator-out", type=click.Path(dir_okay=False), help="Also write v(x) here"
)
@click.option("--signed/--unsigned", default=None, help="Sample signed coefficients")
@click.option(
    "--odd-strategy",
    type=click.Choice(ODD_STRATEGIES),
    default=None,
    help="Parity fix used by 'ours'",
)
@click.pass_context
def keygen(
    ctx: click.Context,
    algo: str,
    n: int,
    t: int,
    seed: int,
    out: Optional[str],
    public_out: Optional[str],
    generator_out: Optional[str],
    signed: Optional[bool],
    odd_strategy: Optional[str],
) -> None:
    """Generate a key pair."""
    config: KeygenConfig = ctx.obj["config"]
    try:
        params = config.keygen_params(
            n, t, seed, signed=signed, odd_strategy=odd_strategy
        )
    except InvalidParametersError as e:
        raise click.UsageError(str(e))

    try:
        result = generate_keys(algo, params)
    except KeygenError as e:
        _fail(ctx, f"Key generation failed: {e}")

    record = KeyRecord.from_result(result, n, seed)
    _emit(format_key(record), out, "key")
    if public_out:
        write_key_file(public_out, record, public=True)
        print_success(f"Wrote public key to {public_out}")
    if generator_out:
        write_text(generator_out, format_poly(result.generator.v, n))
        print_success(f"Wrote generator to {generator_out}")


@cli.command()
@click.option(
    "--key",
    "key_file",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
)
@click.option(
    "--generator",
    "generator_file",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
)
@click.pass_context
def verify(ctx: click.Context, key_file: str, generator_file: str) -> None:
    """Check a key file against the generator it came from."""
    config: KeygenConfig = ctx.obj["config"]
    try:
        record = read_key_file(key_file)
    except KeyFileError as e:
        _fail(ctx, f"{key_file}: {e}", EXIT_USAGE)
    try:
        v = parse_poly(read_text(generator_file))
    except KeyFileError as e:
        _fail(ctx, f"{generator_file}: {e}", EXIT_USAGE)
    if record.is_public:
        _fail(ctx, f"{key_file}: public key files cannot be verified", EXIT_USAGE)
    try:
        ring = RingParams(record.n)
    except InvalidParametersError as e:
        _fail(ctx, f"{key_file}: {e}", EXIT_USAGE)
    if v.degree >= ring.n or v.is_zero():
        _fail(
            ctx,
            f"{generator_file}: need a nonzero polynomial of degree < {ring.n}",
            EXIT_USAGE,
        )

    report = validate_key(
        record.public_key, record.secret_key, v, ring, hnf_ceiling=config.hnf_ceiling
    )
    for check in report.checks:
        print_check(check.name, check.passed, check.detail)
    if not report.passed:
        sys.exit(EXIT_FAILURE)
    print_success("Key is valid")


@cli.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--t", "t", type=int, required=True)
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "csv"]),
    default="json",
    show_default=True,
)
@click.option(
    "--workers", type=int, default=None, help="Worker threads (default from config)"
)
@click.option(
    "--out", type=click.Path(dir_okay=False), help="Report file (default: stdout)"
)
@click.pass_context
def experiment(
    ctx: click.Context,
    n: int,
    t: int,
    trials: int,
    seed: int,
    fmt: str,
    workers: Optional[int],
    out: Optional[str],
) -> None:
    """Count even/odd determinants and simple HNFs for both algorithms."""
    config: KeygenConfig = ctx.obj["config"]
    try:
        results = run_category_experiment(
            n,
            t,
            trials,
            seed,
            hnf_ceiling=config.hnf_ceiling,
            workers=workers if workers is not None else config.workers,
            signed=bool(config.get("keygen.signed")),
            odd_strategy=config.get("keygen.odd_strategy"),
        )
    except InvalidParametersError as e:
        raise click.UsageError(str(e))
    except KeygenError as e:
        _fail(ctx, f"Experiment failed: {e}")

    counts = list(results.values())
    text = categories_to_json(counts) if fmt == "json" else categories_to_csv(counts)
    _emit(text, out, "category report")


@cli.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--t", "t", type=int, required=True)
@click.option("--keys", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "csv"]),
    default="json",
    show_default=True,
)
@click.option(
    "--out", type=click.Path(dir_okay=False), help="Report file (default: stdout)"
)
@click.pass_context
def bench(
    ctx: click.Context,
    n: int,
    t: int,
    keys: int,
    seed: int,
    fmt: str,
    out: Optional[str],
) -> None:
    """Time every key generation phase of both algorithms."""
    config: KeygenConfig = ctx.obj["config"]
    try:
        comparison = run_timing_benchmark(
            n,
            t,
            keys,
            seed,
            max_retries=config.get("keygen.max_retries"),
            signed=bool(config.get("keygen.signed")),
            odd_strategy=config.get("keygen.odd_strategy"),
            odd_search_limit=config.get("keygen.odd_search_limit"),
        )
    except InvalidParametersError as e:
        raise click.UsageError(str(e))
    except KeygenError as e:
        _fail(ctx, f"Benchmark failed: {e}")

    text = timing_to_json(comparison) if fmt == "json" else timing_to_csv(comparison)
    _emit(text, out, "timing report")


@cli.command()
@click.option(
    "--matrix",
    "matrix_file",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
)
@click.pass_context
def hnf(ctx: click.Context, matrix_file: str) -> None:
    """Print the Hermite Normal Form of a square integer matrix."""
    try:
        rows = parse_matrix(read_text(matrix_file))
    except KeyFileError as e:
        _fail(ctx, f"{matrix_file}: {e}", EXIT_USAGE)
    try:
        h = hnf_of(rows)
    except SingularMatrixError:
        _fail(ctx, f"{matrix_file}: matrix is singular")

    click.echo(format_matrix(h.rows), nl=False)
    print_info(f"determinant: {prod(h.diagonal())}")
    print_info(f"simple HNF: {'yes' if is_simple_hnf(h) else 'no'}")
    print_info(
        f"divisibility structure: {'yes' if check_divisibility_structure(h) else 'no'}"
    )


def main() -> None:
    """Main entry point for the CLI."""
    cli()


if __name__ == "__main__":
    main()
