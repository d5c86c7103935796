"""Command-line frontend.

Subcommands: annotate, evaluate, rank, bench, ontology check. Exit codes:
0 success, 1 partial failure (per-file errors, violations, unpaired gold),
2 configuration error.
"""

import argparse
import concurrent.futures
import sys
import time
from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path

from resumekit import evaluator, ranker, scanner
from resumekit.errors import (FileFormatError, MissingGoldError, ResumekitError,
                              UnknownClassError, ValidationError)
from resumekit.europass import assemble, to_xml
from resumekit.lexicon import load_lexicon
from resumekit.ontology import REQUIRED_CLASSES, load_ontology, validate_ontology
from resumekit.pipeline import (Annotator, SourceDocument, load_stopwords,
                                read_annotations, write_annotations)

_DATA = files("resumekit") / "data"

DEFAULT_ONTOLOGY = str(_DATA / "default.ontology")
DEFAULT_LEXICON = str(_DATA / "sample.lexicon")
DEFAULT_STOPWORDS = str(_DATA / "stopwords.txt")
DEFAULT_CORPUS = str(_DATA / "corpus")

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_CONFIG = 2


@dataclass(frozen=True)
class BenchRow:
    n_docs: int
    wall_time: float
    marginal_per_doc: float


@dataclass(frozen=True)
class BenchReport:
    backend: str
    rows: tuple[BenchRow, ...]


def _load_knowledge(args):
    schema = load_ontology(args.ontology)
    lex = load_lexicon(args.lexicon)
    stopwords = load_stopwords(args.stopwords)
    return schema, lex, stopwords


def _input_files(path):
    p = Path(path)
    if p.is_dir():
        return sorted(p.glob("*.txt"))
    if p.is_file():
        return [p]
    raise FileNotFoundError(path)


def _process_one(annotator, path):
    text = path.read_text(encoding="utf-8")
    doc = SourceDocument(id=path.stem, text=text)
    annotations = annotator.annotate(doc)
    resume = assemble(doc, annotations, annotator.schema)
    return write_annotations(annotations), to_xml(resume)


_WORKER_STATE = {}


def _worker_init(ontology_path, lexicon_path, stopwords_path):
    schema = load_ontology(ontology_path)
    lex = load_lexicon(lexicon_path)
    stopwords = load_stopwords(stopwords_path)
    _WORKER_STATE["annotator"] = Annotator(schema, lex, stopwords)


def _worker_process(path_str):
    path = Path(path_str)
    try:
        ann_text, xml_text = _process_one(_WORKER_STATE["annotator"], path)
        return (path.stem, ann_text, xml_text, None)
    except Exception as exc:  # collected per file, never fatal to the batch
        return (path.stem, None, None, f"{type(exc).__name__}: {exc}")


def cmd_annotate(args):
    try:
        inputs = _input_files(args.input)
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        schema, lex, stopwords = _load_knowledge(args)
    except (OSError, ResumekitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    errors = []
    results = []
    if args.workers <= 1:
        annotator = Annotator(schema, lex, stopwords)
        for path in inputs:
            try:
                ann_text, xml_text = _process_one(annotator, path)
                results.append((path.stem, ann_text, xml_text))
            except Exception as exc:
                errors.append((path, f"{type(exc).__name__}: {exc}"))
    else:
        with concurrent.futures.ProcessPoolExecutor(
                max_workers=args.workers, initializer=_worker_init,
                initargs=(args.ontology, args.lexicon, args.stopwords)) as pool:
            for stem, ann_text, xml_text, error in pool.map(
                    _worker_process, [str(p) for p in inputs]):
                if error is None:
                    results.append((stem, ann_text, xml_text))
                else:
                    errors.append((stem, error))

    for stem, ann_text, xml_text in results:
        (out_dir / f"{stem}.ann").write_text(ann_text, encoding="utf-8")
        (out_dir / f"{stem}.xml").write_text(xml_text, encoding="utf-8")

    print(f"annotated {len(results)} document(s) -> {out_dir}")
    if errors:
        for name, message in errors:
            print(f"error: {name}: {message}", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def _class_order(names):
    known = [c for c in REQUIRED_CLASSES if c in names]
    extra = sorted(n for n in names if n not in REQUIRED_CLASSES)
    return known + extra


def cmd_evaluate(args):
    responses_dir = Path(args.responses)
    gold_dir = Path(args.gold)
    if not responses_dir.is_dir() or not gold_dir.is_dir():
        print("error: evaluate needs a responses directory and a --gold directory",
              file=sys.stderr)
        return EXIT_CONFIG

    responses = {p.stem: p for p in sorted(responses_dir.glob("*.ann"))}
    gold = {p.stem: p for p in sorted(gold_dir.glob("*.ann"))}
    unpaired = sorted(set(responses) ^ set(gold))
    if unpaired:
        for stem in unpaired:
            side = "gold" if stem in responses else "response"
            print(f"error: {MissingGoldError(f'no {side} file for {stem!r}')}",
                  file=sys.stderr)
        return EXIT_PARTIAL
    if not gold:
        print("error: no .ann files to evaluate", file=sys.stderr)
        return EXIT_CONFIG

    pairs = []
    for stem in sorted(gold):
        pairs.append((read_annotations(gold[stem]),
                      read_annotations(responses[stem])))

    totals = evaluator.aggregate_counts(pairs)
    order = _class_order(totals)
    per_class = {
        name: evaluator.ClassScore(
            class_name=name, counts=totals[name],
            metrics=evaluator.metrics(totals[name], args.mode, args.beta))
        for name in order
    }
    micro_counts = sum(totals.values(), evaluator.DiffCounts())
    micro = evaluator.metrics(micro_counts, args.mode, args.beta)

    print(evaluator.format_class_table(per_class, args.mode))
    print(f"micro-average  P={micro.precision:.2f}  R={micro.recall:.2f}  "
          f"F={micro.f_measure:.2f}  over {len(pairs)} document(s)")
    if args.csv:
        Path(args.csv).write_text(evaluator.csv_rows(per_class, micro),
                                  encoding="utf-8")
        print(f"wrote {args.csv}")
    return EXIT_OK


def cmd_rank(args):
    try:
        schema = load_ontology(args.ontology)
        profile = ranker.load_profile(args.profile)
        ranker.validate_profile(profile, schema)
        ann_dir = Path(args.annotations)
        ann_files = sorted(ann_dir.glob("*.ann"))
    except (OSError, ResumekitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    resumes = [(p.stem, read_annotations(p)) for p in ann_files]
    ranked = ranker.rank(resumes, profile)
    print(f"{'rank':<6}{'resume':<24}{'score':>8}  satisfied")
    for position, row in enumerate(ranked, start=1):
        satisfied = ",".join(str(i) for i in row.satisfied) or "-"
        print(f"{position:<6}{row.resume_id:<24}{row.score:>8.2f}  {satisfied}")
    return EXIT_OK


def run_bench(corpus_dir, sizes, schema, lex, stopwords, backend="auto"):
    """Time the annotation loop for each corpus size.

    Knowledge bases are loaded once by the caller; each size gets a fresh
    annotator so per-run setup (gazetteer index build) is measured and
    amortized exactly as the batch command amortizes it.
    """
    docs = []
    paths = sorted(Path(corpus_dir).glob("*.txt"))
    if not paths:
        raise FileNotFoundError(f"no .txt documents in {corpus_dir}")
    for path in paths:
        docs.append(SourceDocument(id=path.stem,
                                   text=path.read_text(encoding="utf-8")))

    previous_backend = None
    if backend != "auto":
        previous_backend = scanner.set_backend(backend)
    try:
        sizes = sorted(set(sizes))
        largest = max(sizes)
        corpus = [docs[i % len(docs)] for i in range(largest)]
        rows = []
        prev_n = prev_wall = None
        for n in sizes:
            annotator = Annotator(schema, lex, stopwords)
            start = time.perf_counter()
            for doc in corpus[:n]:
                annotator.annotate(doc)
            wall = time.perf_counter() - start
            if prev_n is None:
                marginal = wall / n
            else:
                marginal = (wall - prev_wall) / (n - prev_n)
            rows.append(BenchRow(n_docs=n, wall_time=wall,
                                 marginal_per_doc=marginal))
            prev_n, prev_wall = n, wall
        return BenchReport(backend=scanner.backend_name(), rows=tuple(rows))
    finally:
        if previous_backend is not None:
            scanner.set_backend(previous_backend)


def cmd_bench(args):
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
        if not sizes or any(n <= 0 for n in sizes):
            raise ValueError(f"bad sizes {args.sizes!r}")
        schema, lex, stopwords = _load_knowledge(args)
        report = run_bench(args.corpus, sizes, schema, lex, stopwords,
                           backend=args.backend)
    except (OSError, ValueError, ResumekitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    print(f"scanner backend: {report.backend}")
    print(f"{'n_docs':>8}  {'wall_time':>12}  {'marginal/doc':>12}")
    for row in report.rows:
        print(f"{row.n_docs:>8}  {row.wall_time:>11.4f}s  "
              f"{row.marginal_per_doc:>11.5f}s")
    return EXIT_OK


def cmd_ontology_check(args):
    path = Path(args.path)
    if not path.is_file():
        print(f"error: no such file: {path}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        schema = load_ontology(path)
    except FileFormatError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_PARTIAL
    except ValidationError as exc:
        for violation in exc.violations:
            print(f"violation: {violation}", file=sys.stderr)
        print(f"{len(exc.violations)} violation(s)", file=sys.stderr)
        return EXIT_PARTIAL
    leftover = validate_ontology(schema)
    if leftover:
        for violation in leftover:
            print(f"violation: {violation}", file=sys.stderr)
        return EXIT_PARTIAL
    print(f"OK: {len(schema.classes)} classes, {len(schema.instances)} instances, "
          f"version {schema.version}")
    return EXIT_OK


def _add_knowledge_flags(parser):
    parser.add_argument("--ontology", default=DEFAULT_ONTOLOGY,
                        help="ontology file (default: bundled)")
    parser.add_argument("--lexicon", default=DEFAULT_LEXICON,
                        help="lexicon file (default: bundled)")
    parser.add_argument("--stopwords", default=DEFAULT_STOPWORDS,
                        help="stopword file (default: bundled)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="resumekit",
        description="Annotate resumes against an ontology, export EUROPASS "
                    "XML, score against gold standards, rank candidates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("annotate", help="annotate a file or directory of .txt resumes")
    p.add_argument("input", help="resume file or directory of .txt files")
    _add_knowledge_flags(p)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("evaluate", help="score response .ann files against gold")
    p.add_argument("responses", help="directory of response .ann files")
    p.add_argument("--gold", required=True, help="directory of gold .ann files")
    p.add_argument("--mode", choices=evaluator.MODES, default="average")
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--csv", help="also write the per-class report as CSV")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("rank", help="rank annotated resumes against a profile")
    p.add_argument("annotations", help="directory of .ann files")
    p.add_argument("--profile", required=True,
                   help="profile file: class<TAB>needle<TAB>weight")
    p.add_argument("--ontology", default=DEFAULT_ONTOLOGY)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("bench", help="time the annotation loop per corpus size")
    p.add_argument("corpus", nargs="?", default=DEFAULT_CORPUS,
                   help="corpus directory (default: bundled sample corpus)")
    _add_knowledge_flags(p)
    p.add_argument("--sizes", default="1,10",
                   help="comma-separated corpus sizes, e.g. 1,10,50")
    p.add_argument("--backend", choices=["auto"] + scanner.available_backends(),
                   default="auto", help="scanner backend to time")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("ontology", help="ontology utilities")
    onto_sub = p.add_subparsers(dest="ontology_command", required=True)
    pc = onto_sub.add_parser("check", help="validate an ontology file")
    pc.add_argument("path")
    pc.set_defaults(func=cmd_ontology_check)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
