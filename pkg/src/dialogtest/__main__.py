import logging
import sys
from functools import wraps
from pathlib import Path
from typing import List, Optional, Tuple

import click
from termcolor import cprint

from dialogtest.agents import AgentSpec, echo_agent
from dialogtest.agents.base import DEFAULT_RESPONSE_TIMEOUT
from dialogtest.configuration import DotListParamType, resolve_context
from dialogtest.errors import DialogTestError
from dialogtest.oracles import JaccardTokens, SemanticOracle, StrategyRegistry
from dialogtest.suites import ReportFormat, load_suite, render_report, run_suite
from dialogtest.text.wordvec import ModelCatalog, ModelFormat, load_model
from dialogtest.utils.logging import easylog
from dialogtest.vxml import coverage_report, emit_suite, generate_sequences, parse_vxml

logger = easylog()

ERROR_EXIT_CODE = 2


def report_errors(fn):
    """Prints framework errors in red and exits with code 2"""

    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DialogTestError as e:
            cprint(f"{type(e).__name__}: {e}", "red", file=sys.stderr)
            sys.exit(ERROR_EXIT_CODE)

    return wrapper


def model_options(fn):
    fn = click.option(
        "--model-name", type=str, help="Model identifier (defaults to the file stem)"
    )(fn)
    fn = click.option(
        "--model-format",
        type=click.Choice([f.value for f in ModelFormat]),
        required=True,
        help="Format of the word-vector file",
    )(fn)
    fn = click.option(
        "--model",
        "model_path",
        type=click.Path(dir_okay=False, path_type=Path),
        required=True,
        help="Word-vector file",
    )(fn)
    return fn


def oracle_with_model(
    model_path: Path, model_format: str, model_name: Optional[str]
) -> Tuple[SemanticOracle, str]:
    model = load_model(model_path, model_format, name=model_name)
    registry = StrategyRegistry.default()
    registry.register(JaccardTokens().instance())
    return SemanticOracle(ModelCatalog([model]), registry), model.name


@click.group()
@click.option("--debug", is_flag=True, help="Print debug information")
def cli(debug: bool):
    logging.basicConfig(
        level=logging.DEBUG if debug else logging.INFO,
        format="%(levelname)s:%(name)s: %(message)s",
    )


@cli.command()
@click.option(
    "--suite",
    "suite_path",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="The suite file to run",
)
@model_options
@click.option("--threshold", type=float, help="Equivalence threshold")
@click.option("--relevance-threshold", type=float, help="Relevance threshold")
@click.option("--agent", type=str, help="Command line of the agent under test")
@click.option(
    "--agent-timeout",
    type=float,
    default=DEFAULT_RESPONSE_TIMEOUT,
    show_default=True,
    help="Seconds to wait for each answer of the agent",
)
@click.option(
    "--state/--no-state", default=False, help="Whether the agent answers state queries"
)
@click.option(
    "--report",
    "report_format",
    type=click.Choice([f.value for f in ReportFormat]),
    default=ReportFormat.HUMAN.value,
    show_default=True,
)
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
@click.option(
    "--wake-phrase",
    type=str,
    help="Wake phrase of the agent, removed from user turns by breakdown checks",
)
@click.option(
    "--set",
    "overrides",
    type=DotListParamType(),
    multiple=True,
    help="Sets a context field (takes precedence over the suite)",
)
@click.option(
    "--output",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Writes the report to a file rather than to the standard output",
)
@report_errors
def run(
    suite_path: Path,
    model_path: Path,
    model_format: str,
    model_name: Optional[str],
    threshold: Optional[float],
    relevance_threshold: Optional[float],
    agent: Optional[str],
    agent_timeout: float,
    state: bool,
    report_format: str,
    jobs: int,
    wake_phrase: Optional[str],
    overrides: List[str],
    output: Optional[Path],
):
    """Runs a suite against an agent

    Exits with 0 when every case passes, 1 when some case fails, and 2 when
    some case errors.
    """
    suite = load_suite(suite_path)
    oracle, model_id = oracle_with_model(model_path, model_format, model_name)

    flags = {
        "model_id": model_id,
        "equivalence_threshold": threshold,
        "relevance_threshold": relevance_threshold,
        "wake_phrase": wake_phrase,
    }
    flags = {key: value for key, value in flags.items() if value is not None}
    ctx = resolve_context(flags, list(overrides))
    pinned = set(flags) | {item.split("=", 1)[0].split(".")[0] for item in overrides}

    if agent is None:
        logger.info("No agent given: using the echo agent")
        spec = echo_agent()
    else:
        spec = AgentSpec.subprocess(
            agent, supports_state=state, response_timeout=agent_timeout
        )

    report = run_suite(suite, ctx, spec, oracle=oracle, jobs=jobs, pinned=pinned)

    if output is not None:
        output.write_text(render_report(report, report_format), encoding="utf-8")
    else:
        color = report_format == ReportFormat.HUMAN and sys.stdout.isatty()
        click.echo(render_report(report, report_format, color=color), nl=False)
    sys.exit(report.exit_code)


@cli.command("check-suite")
@click.argument("path", type=click.Path(dir_okay=False, path_type=Path))
@report_errors
def check_suite(path: Path):
    """Validates a suite file without running it"""
    suite = load_suite(path)
    click.echo(f"{path}: {len(suite)} valid case(s)")


@cli.command()
@click.argument("a", type=str)
@click.argument("b", type=str)
@model_options
@click.option(
    "--strategy",
    type=str,
    default=None,
    help="Similarity strategy (avg-embedding-cosine or jaccard-tokens)",
)
@report_errors
def similarity(
    a: str,
    b: str,
    model_path: Path,
    model_format: str,
    model_name: Optional[str],
    strategy: Optional[str],
):
    """Prints the similarity of two utterances"""
    oracle, model_id = oracle_with_model(model_path, model_format, model_name)
    values = {"model_id": model_id}
    if strategy is not None:
        values["strategy_id"] = strategy
    ctx = resolve_context(values)
    score = oracle.score(a, b, ctx)
    click.echo(f"{score.value:.4f}")
    click.echo(f"skipped tokens: a={score.skipped[0]} b={score.skipped[1]}")


@cli.command("gen-vxml")
@click.option(
    "--in",
    "input_path",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="VoiceXML document",
)
@click.option(
    "--out",
    "output_path",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="Suite file to write",
)
@click.option("--loop-bound", type=click.IntRange(min=0), default=1, show_default=True)
@report_errors
def gen_vxml(input_path: Path, output_path: Path, loop_bound: int):
    """Generates a transition-covering suite from a VoiceXML document"""
    try:
        document = input_path.read_bytes()
    except OSError as e:
        raise click.FileError(str(input_path), hint=str(e))

    automaton = parse_vxml(document)
    sequences = generate_sequences(automaton, loop_bound=loop_bound)
    output_path.write_text(emit_suite(sequences, automaton), encoding="utf-8")

    coverage = coverage_report(automaton, sequences)
    click.echo(f"{len(sequences)} case(s) written to {output_path}")
    click.echo(coverage.summary())


def main():
    cli(obj=None)


if __name__ == "__main__":
    main()
