"""Command-line interface: anonymize, curve, bench, serve."""

from __future__ import annotations

import dataclasses
import json
import sys
from pathlib import Path

import click

from .bench import (
    corpus_rule_pack,
    default_modes,
    generate_corpus,
    load_corpus,
    run_bench,
    write_report,
)
from .config import AppConfig, build_engine, load_config
from .engine import Engine, Mode, replace_text
from .errors import AdanonError
from .pseudonymizer import PseudonymSession

UNIT = click.FloatRange(0.0, 1.0)
POSITIVE = click.FloatRange(0.0, min_open=True)


def _load_engine(config_path: str | None, endpoint: str | None) -> Engine:
    config = load_config(config_path)
    if endpoint:
        config = dataclasses.replace(config, llm_endpoint=endpoint)
    return build_engine(config)


def _read_input(source: str | None) -> str:
    if source is None or source == "-":
        return sys.stdin.read()
    return Path(source).read_text(encoding="utf-8")


def _build_mode(mode: str, privacy: float | None, utility: float | None, epsilon: float) -> Mode:
    if mode == "automatic":
        return Mode.automatic()
    if mode == "privacy_only":
        if privacy is None:
            raise click.UsageError("privacy_only mode needs --privacy")
        return Mode.privacy_only(privacy)
    if mode == "full":
        if privacy is None or utility is None:
            raise click.UsageError("full mode needs --privacy and --utility")
        return Mode.full(privacy, utility)
    return Mode.dp(epsilon)


@click.group()
def main() -> None:
    """Selective pseudonymization with a navigable privacy-utility trade-off."""


@main.command()
@click.option("--in", "-i", "in_file", default=None, help="Input file, or '-' for stdin.")
@click.option("--out", "-o", "out_file", default=None, help="Output file (default stdout).")
@click.option(
    "--mode",
    type=click.Choice(["automatic", "privacy_only", "full", "dp"]),
    default="automatic",
    show_default=True,
)
@click.option("--privacy", type=UNIT, default=None, help="Privacy level in [0, 1].")
@click.option("--utility", type=UNIT, default=None, help="Performance level in [0, 1].")
@click.option("--epsilon", type=POSITIVE, default=10.0, show_default=True)
@click.option("--backend", type=click.Choice(["rules", "llm"]), default="rules", show_default=True)
@click.option("--endpoint", default=None, help="Chat-completion endpoint for the llm backend.")
@click.option("--seed", type=int, default=0, show_default=True, help="Sampler seed for dp mode.")
@click.option("--session", "session_id", default=None, help="Pseudonym session id.")
@click.option("--json", "as_json", is_flag=True, help="Emit the full result as JSON.")
@click.option("--labels", is_flag=True, help="Print the replacement label table to stderr.")
@click.option("--config", "config_path", default=None, help="TOML config file.")
def anonymize(
    in_file, out_file, mode, privacy, utility, epsilon, backend, endpoint, seed,
    session_id, as_json, labels, config_path,
):
    """Anonymize text from --in (or stdin) and write the result."""
    try:
        engine = _load_engine(config_path, endpoint)
        text = _read_input(in_file)
        if not text:
            raise click.UsageError("input text is empty")
        selected = _build_mode(mode, privacy, utility, epsilon)
        session = PseudonymSession.new(session_id)
        result = engine.run(text, selected, backend=backend, session=session, dp_seed=seed)
    except click.ClickException:
        raise
    except (AdanonError, OSError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc

    if as_json:
        payload = {
            "output_text": result.doc.output_text,
            "changes": [
                {
                    "start": c.start,
                    "end": c.end,
                    "replacement": c.replacement,
                    "category": c.category,
                    "type": c.type_name,
                }
                for c in result.doc.changes
            ],
            "achieved": {"privacy": result.doc.achieved[0], "utility": result.doc.achieved[1]},
            "snapped_point": (
                {"x": result.plan.snapped_point.x, "y": result.plan.snapped_point.y}
                if result.plan
                else None
            ),
            "warnings": list(result.doc.warnings),
            "session_id": session.session_id,
        }
        rendered = json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
    else:
        rendered = replace_text(result)
        if not rendered.endswith("\n"):
            rendered += "\n"
    if out_file:
        Path(out_file).write_text(rendered, encoding="utf-8")
    else:
        click.echo(rendered, nl=False)
    if labels:
        for entry in result.labels:
            click.echo(f"{entry.replacement}\t{entry.type_name}\t{entry.category}", err=True)


@main.command()
@click.option("--config", "config_path", default=None, help="TOML config file.")
@click.option("--json", "as_json", is_flag=True, default=True, help="Emit JSON (default).")
def curve(config_path, as_json):
    """Print the privacy-utility frontier vertices."""
    try:
        engine = _load_engine(config_path, None)
    except (AdanonError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(json.dumps(engine.frontier.to_json(), indent=2))


@main.command()
@click.option("--docs", type=click.IntRange(min=1), default=100, show_default=True)
@click.option("--seed", type=int, default=7, show_default=True)
@click.option("--corpus", "corpus_path", default=None, help="Existing corpus (JSONL).")
@click.option("--epsilon", type=POSITIVE, default=10.0, show_default=True)
@click.option("--out", "out_dir", default="bench_out", show_default=True)
@click.option("--config", "config_path", default=None, help="TOML config file.")
def bench(docs, seed, corpus_path, epsilon, out_dir, config_path):
    """Run the four-mode comparison over a seeded corpus."""
    try:
        engine = _load_engine(config_path, None)
        corpus = load_corpus(corpus_path) if corpus_path else generate_corpus(seed, docs)
        engine.rule_pack = corpus_rule_pack(engine.rule_pack, corpus)
        report = run_bench(engine, corpus, default_modes(epsilon), seed)
        json_path, csv_path = write_report(report, out_dir)
    except (AdanonError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc
    for m in report.modes:
        click.echo(
            f"{m.label}: residual_recall={m.residual_recall:.3f} "
            f"preservation={m.preservation:.3f} latency={m.mean_latency_ms:.1f}ms"
        )
    click.echo(f"report written to {json_path} and {csv_path}")


@main.command()
@click.option("--port", type=click.IntRange(1, 65535), default=8787, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--config", "config_path", default=None, help="TOML config file.")
def serve(port, host, config_path):
    """Run the HTTP service."""
    from .service import serve as run_service

    try:
        config = load_config(config_path)
        run_service(port, config, host=host)
    except (AdanonError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc


if __name__ == "__main__":
    main()
