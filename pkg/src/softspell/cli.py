"""Command-line interface.

    softspell prepare   raw text -> intermediate-coded corpus
    softspell stats     corpus statistics report
    softspell inject    corrupt a corpus, writing a change log
    softspell train     train a corrector, saving model + history
    softspell evaluate  full metrics report for a model on a test corpus
    softspell correct   fix soft spelling mistakes in a text file

Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric
divergence during training.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import arabic
from .config import resolve_config
from .corpus import Corpus, corpus_stats, load_corpus, save_corpus
from .errors import DataError, DivergenceError, SoftspellError
from .groups import ALL_GROUPS, CorruptionRecord, InjectionConfig, apply_record, inject_corpus
from .metrics import ConfusionMatrix, build_report
from .nn.model import ModelSpec
from .nn.serialize import load_model, save_model
from .nn.training import (
    StochasticInjection,
    TrainConfig,
    TransformedInput,
    predict as predict_sequence,
    train as train_model,
)


@click.group()
def cli():
    """Correct Arabic soft spelling mistakes with a character-level
    bidirectional LSTM."""


def _write_report(payload: dict, fmt: str, output, table_text: str | None = None):
    if fmt == "table" and table_text is not None:
        text = table_text
    else:
        text = json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True)
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
    else:
        click.echo(text)


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--output", "output_path", required=True, type=click.Path())
@click.option("--strip-diacritics/--no-strip-diacritics", default=True, show_default=True)
def prepare(input_path, output_path, strip_diacritics):
    """Transcode raw text into the intermediate-code alphabet."""
    corpus = load_corpus(
        input_path, strip_diacritics=strip_diacritics, to_intermediate=True
    )
    save_corpus(corpus, output_path)
    click.echo(f"prepared {len(corpus)} sequences -> {output_path}")


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--output", "output_path", type=click.Path(), default=None)
@click.option("--intermediate", is_flag=True, help="input is already intermediate-coded")
@click.option("--strip-diacritics/--no-strip-diacritics", default=True, show_default=True)
@click.option("--report", "fmt", type=click.Choice(["json", "table"]), default="json")
def stats(input_path, output_path, intermediate, strip_diacritics, fmt):
    """Corpus statistics: counts plus target-letter frequencies."""
    corpus = load_corpus(
        input_path,
        strip_diacritics=strip_diacritics and not intermediate,
        to_intermediate=not intermediate,
    )
    report = corpus_stats(corpus)
    report["config"] = {
        "input": str(input_path),
        "intermediate": intermediate,
        "strip_diacritics": strip_diacritics,
    }
    if fmt == "table":
        lines = [
            f"sequences            {report['sequence_count']}",
            f"words                {report['word_count']}",
            f"characters           {report['character_count']}",
            f"words/sequence       {report['words_per_sequence']:.2f}",
            f"letters/word         {report['letters_per_word']:.2f}",
            f"within {report['max_len']} chars     {report['fraction_within_max_len']:.2%}",
            "",
            f"{'letters':8s} {'count':>9s} {'freq':>8s} {'rel':>8s}",
        ]
        for row in report["targets"]:
            lines.append(
                f"{row['display']:8s} {row['count']:9d} {row['frequency']:8.2%}"
                f" {row['relative_frequency']:8.2%}"
            )
        _write_report(report, fmt, output_path, "\n".join(lines))
    else:
        _write_report(report, fmt, output_path)


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True),
              help="intermediate-coded corpus (see prepare)")
@click.option("--output", "output_path", required=True, type=click.Path())
@click.option("--rate", type=float, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--record", "record_path", type=click.Path(), default=None,
              help="write the change log TSV here")
@click.option("--groups", default=None,
              help=f"comma-separated subset of {','.join(ALL_GROUPS)}")
def inject(input_path, output_path, rate, seed, record_path, groups):
    """Corrupt a clean corpus by intra-group substitution at RATE."""
    corpus = load_corpus(input_path)
    enabled = frozenset(groups.split(",")) if groups else frozenset(ALL_GROUPS)
    cfg = InjectionConfig(rate=rate, seed=seed, enabled_groups=enabled)
    corrupted, record = inject_corpus(corpus.texts(), cfg)
    save_corpus(Corpus.from_texts(corrupted), output_path)
    if record_path:
        record.write_tsv(record_path)
    click.echo(
        f"injected {len(record)} changes into {len(corpus)} sequences -> {output_path}"
    )


def _train_flags(f):
    """Shared train-time flags; None means "not set here", so config
    files can fill the gap."""
    flags = [
        click.option("--approach", type=click.Choice(["transformed", "inject"]), default=None),
        click.option("--rate", type=float, default=None),
        click.option("--layers", type=click.Choice(["2", "4"]), default=None),
        click.option("--hidden", type=int, default=None),
        click.option("--dropout", type=float, default=None),
        click.option("--recurrent-dropout", type=float, default=None),
        click.option("--peepholes", type=click.Choice(["on", "off"]), default=None),
        click.option("--batch", type=int, default=None),
        click.option("--max-epochs", type=int, default=None),
        click.option("--patience", type=int, default=None),
        click.option("--seed", type=int, default=None),
        click.option("--lr", type=float, default=None),
        click.option("--strip-diacritics/--no-strip-diacritics", "strip_diacritics", default=None),
        click.option("--valid-fraction", type=float, default=None),
    ]
    for flag in reversed(flags):
        f = flag(f)
    return f


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True),
              help="clean raw-text training corpus")
@click.option("--model", "model_path", required=True, type=click.Path())
@click.option("--history", "history_path", type=click.Path(), default=None)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="key=value config file; flags override it")
@click.option("--intermediate", is_flag=True, help="input is already intermediate-coded")
@_train_flags
def train(input_path, model_path, history_path, config_path, intermediate, **flags):
    """Train a corrector on clean text."""
    if flags.get("layers") is not None:
        flags["layers"] = int(flags["layers"])
    if flags.get("peepholes") is not None:
        flags["peepholes"] = flags["peepholes"] == "on"
    cfg = resolve_config(config_path, **flags)

    corpus = load_corpus(
        input_path,
        strip_diacritics=cfg.strip_diacritics and not intermediate,
        to_intermediate=not intermediate,
    )
    targets = corpus.texts()
    n_valid = max(1, int(round(len(targets) * cfg.valid_fraction)))
    if n_valid >= len(targets):
        raise DataError("corpus too small for the validation fraction")
    train_targets = targets[:-n_valid]
    valid_targets = targets[-n_valid:]

    spec = ModelSpec(
        vocab_size=0,
        layers=cfg.layers,
        hidden=cfg.hidden,
        dropout=cfg.dropout,
        recurrent_dropout=cfg.recurrent_dropout,
        peepholes=cfg.peepholes,
    )
    train_cfg = TrainConfig(
        batch_size=cfg.batch,
        max_len=cfg.max_len,
        max_epochs=cfg.max_epochs,
        patience=cfg.patience,
        seed=cfg.seed,
        lr=cfg.lr,
        rho=cfg.rho,
        epsilon=cfg.epsilon,
    )
    if cfg.approach == "transformed":
        approach = TransformedInput()
    else:
        approach = StochasticInjection(
            rate=cfg.rate, resample_each_epoch=cfg.resample_errors
        )

    model, history = train_model(spec, train_targets, valid_targets, approach, train_cfg)
    model.provenance["config"] = cfg.to_dict()
    save_model(model, model_path)
    if history_path:
        payload = {"config": cfg.to_dict(), "history": history}
        Path(history_path).write_text(
            json.dumps(payload, ensure_ascii=False, indent=2), encoding="utf-8"
        )
    best = model.provenance.get("best_valid_loss")
    click.echo(
        f"trained {len(history)} epochs (best valid loss "
        f"{best if best is None else round(best, 6)}) -> {model_path}"
    )


@cli.command()
@click.option("--model", "model_path", required=True, type=click.Path(exists=True))
@click.option("--input", "input_path", required=True, type=click.Path(exists=True),
              help="clean test corpus (targets)")
@click.option("--intermediate", is_flag=True, help="input is already intermediate-coded")
@click.option("--strip-diacritics/--no-strip-diacritics", default=True, show_default=True)
@click.option("--record", "record_path", type=click.Path(exists=True), default=None,
              help="change log TSV: inputs are reconstructed by replay and "
                   "FP/Changes + correction rate are reported")
@click.option("--approach", type=click.Choice(["transformed", "inject"]), default=None,
              help="derive eval inputs instead of reading a record")
@click.option("--rate", type=float, default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--predictions", "predictions_path", type=click.Path(exists=True), default=None,
              help="precomputed intermediate predictions; skips the model")
@click.option("--report", "fmt", type=click.Choice(["json", "table"]), default="json")
@click.option("--output", "output_path", type=click.Path(), default=None)
@click.option("--matrix-csv", "matrix_path", type=click.Path(), default=None)
def evaluate(model_path, input_path, intermediate, strip_diacritics, record_path,
             approach, rate, seed, predictions_path, fmt, output_path, matrix_path):
    """Evaluate a model: confusion matrix and the full metric suite."""
    corpus = load_corpus(
        input_path,
        strip_diacritics=strip_diacritics and not intermediate,
        to_intermediate=not intermediate,
    )
    targets = corpus.texts()

    record = None
    if record_path:
        record = CorruptionRecord.read_tsv(record_path)
        inputs = apply_record(targets, record)
    elif approach == "transformed":
        from .groups import transform_input

        inputs = [transform_input(t) for t in targets]
    elif approach == "inject":
        if rate is None:
            raise click.UsageError("--approach inject needs --rate")
        inputs, record = inject_corpus(targets, InjectionConfig(rate=rate, seed=seed))
    else:
        inputs = targets

    config_echo = {
        "model": str(model_path),
        "input": str(input_path),
        "record": record_path,
        "approach": approach,
        "rate": rate,
        "seed": seed,
    }

    if predictions_path:
        predictions = load_corpus(predictions_path).texts()
        if len(predictions) != len(targets):
            raise DataError(
                f"{len(predictions)} predictions for {len(targets)} targets"
            )
        config_echo["predictions"] = str(predictions_path)
    else:
        model = load_model(model_path)
        config_echo["model_provenance"] = model.provenance
        predictions = [predict_sequence(model, s) for s in inputs]

    matrix = ConfusionMatrix()
    for p, t in zip(predictions, targets):
        matrix.accumulate(p, t)
    report = build_report(matrix, predictions, targets, record, config_echo)
    if matrix_path:
        matrix.to_csv(matrix_path)
    _write_report(report.to_dict(), fmt, output_path, report.to_table())


@cli.command()
@click.option("--model", "model_path", required=True, type=click.Path(exists=True))
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--output", "output_path", required=True, type=click.Path())
@click.option("--strip-diacritics/--no-strip-diacritics", default=True, show_default=True)
def correct(model_path, input_path, output_path, strip_diacritics):
    """Correct soft spelling mistakes, line by line (line count is
    preserved, empty lines included)."""
    model = load_model(model_path)
    raw = Path(input_path).read_text(encoding="utf-8")
    lines = raw.split("\n")
    trailing_newline = lines and lines[-1] == ""
    if trailing_newline:
        lines = lines[:-1]
    out_lines = []
    for line in lines:
        text = arabic.strip_diacritics(line) if strip_diacritics else line
        seq = arabic.to_intermediate(text)
        out_lines.append(arabic.from_intermediate(predict_sequence(model, seq)))
    Path(output_path).write_text(
        "\n".join(out_lines) + ("\n" if trailing_newline else ""), encoding="utf-8"
    )
    click.echo(f"corrected {len(out_lines)} lines -> {output_path}")


def main(argv=None) -> int:
    """Entry point with the documented exit-code mapping."""
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.Abort:
        return 1
    except DivergenceError as exc:
        click.echo(f"error: {exc}", err=True)
        return 3
    except SoftspellError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2


if __name__ == "__main__":
    sys.exit(main())
