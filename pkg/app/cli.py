"""Command-line surface of the shorthand toolkit.

Usage::

    $ python cli.py parse spec.short
    $ python cli.py to-json spec.short | python cli.py from-json -
    $ python cli.py stats --shorthand spec.short --full spec.json
    $ python cli.py prompt --schema fields.txt --query "monthly sales by region"

`-` reads standard input. Diagnostics go to standard error as
`<line>:<col>: <severity> <code>: <message>`. Exit codes: 0 success,
1 diagnostics with errors, 2 usage error.
"""

import json
import sys
from typing import Iterable, List, Optional

import click

import fullspec_codec
from config import Settings, configure_logging
from models.diagnostic import Diagnostic
from models.prompt import PromptBundle
from shorthand_emitter import emit
from shorthand_parser import parse
from token_stats import compare, heuristic_counter, tiktoken_counter
from util.grammar import load_grammar

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_USAGE = 2

settings = Settings()


def read_source(source) -> str:
    """Read a source file; bytes that are not UTF-8 are a usage error."""
    try:
        return source.read()
    except UnicodeDecodeError as exc:
        raise click.UsageError(f"{source.name}: not valid UTF-8 at byte {exc.start}")


def report(diagnostics: Iterable[Diagnostic]) -> bool:
    """Print diagnostics to stderr; True when any of them is an error."""
    has_errors = False
    for diagnostic in diagnostics:
        click.echo(diagnostic.format(), err=True)
        has_errors = has_errors or diagnostic.is_error
    return has_errors


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log pipeline details to stderr.")
def cli(verbose: bool):
    """Visualization shorthand toolkit."""
    configure_logging("DEBUG" if verbose else settings.log_level)


@cli.command("parse")
@click.argument("source", type=click.File("r", encoding="utf-8"))
@click.pass_context
def parse_command(ctx, source):
    """Parse shorthand and report diagnostics."""
    result = parse(read_source(source))
    if report(result.diagnostics):
        ctx.exit(EXIT_DIAGNOSTICS)


@cli.command("to-json")
@click.argument("source", type=click.File("r", encoding="utf-8"))
@click.option("--indent", type=click.IntRange(min=0), default=settings.json_indent, show_default=True)
@click.pass_context
def to_json_command(ctx, source, indent):
    """Convert shorthand to the full-spec JSON document."""
    result = parse(read_source(source))
    if report(result.diagnostics):
        ctx.exit(EXIT_DIAGNOSTICS)
    report(fullspec_codec.unspecified_field_warnings(result.spec))
    click.echo(fullspec_codec.dumps(fullspec_codec.to_full_spec(result.spec), indent=indent), nl=False)


@cli.command("from-json")
@click.argument("source", type=click.File("r", encoding="utf-8"))
@click.pass_context
def from_json_command(ctx, source):
    """Convert a full-spec JSON document to canonical shorthand."""
    result = fullspec_codec.loads(read_source(source))
    if report(result.diagnostics):
        ctx.exit(EXIT_DIAGNOSTICS)
    click.echo(emit(result.spec), nl=False)


@cli.command("roundtrip")
@click.argument("source", type=click.File("r", encoding="utf-8"))
@click.pass_context
def roundtrip_command(ctx, source):
    """Check that parse -> emit -> parse reaches a fixed point."""
    first = parse(read_source(source))
    if report(first.errors):
        ctx.exit(EXIT_DIAGNOSTICS)
    canonical = emit(first.spec)
    second = parse(canonical)
    if second.spec != first.spec or emit(second.spec) != canonical:
        click.echo("roundtrip: re-parsed canonical text differs from the first parse", err=True)
        report(second.errors)
        ctx.exit(EXIT_DIAGNOSTICS)


@cli.command("stats")
@click.option("--shorthand", "shorthand_file", required=True, type=click.File("r", encoding="utf-8"))
@click.option("--full", "full_file", required=True, type=click.File("r", encoding="utf-8"))
@click.option("--encoding", default=None, help="Count with this tiktoken encoding instead of the heuristic.")
def stats_command(shorthand_file, full_file, encoding):
    """Print token and character counts as one JSON record."""
    counter = heuristic_counter
    if encoding is not None:
        try:
            counter = tiktoken_counter(encoding)
        except RuntimeError as exc:
            raise click.UsageError(str(exc))
    stats = compare(read_source(shorthand_file), read_source(full_file), counter)
    click.echo(json.dumps(stats.model_dump(by_alias=True)))


@cli.command("grammar")
def grammar_command():
    """Print the bundled CFG."""
    click.echo(load_grammar(), nl=False)


@cli.command("prompt")
@click.option("--schema", "schema_file", required=True, type=click.File("r", encoding="utf-8"))
@click.option("--query", required=True)
@click.option("--grammar-label", default=settings.grammar_label, show_default=True)
@click.option("--schema-label", default=settings.schema_label, show_default=True)
@click.option("--request-label", default=settings.request_label, show_default=True)
def prompt_command(schema_file, query, grammar_label, schema_label, request_label):
    """Assemble grammar, dataset fields and request into one prompt."""
    bundle = PromptBundle(grammar_text=load_grammar(), schema_extract=read_source(schema_file), user_query=query)
    click.echo(bundle.render(grammar_label, schema_label, request_label), nl=False)


def run(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand and return its exit code."""
    try:
        result = cli.main(args=argv, prog_name="dss", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return EXIT_USAGE
    # non-standalone click returns the exit code of ctx.exit() and None otherwise
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
