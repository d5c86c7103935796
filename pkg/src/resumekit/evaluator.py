"""Annotation-diff scorer: align a response set against a gold (key) set,
tally Correct / Partial / Missing / Spurious, and derive precision, recall
and F-measure in strict, lenient and average modes.

A partial match requires the same class and overlapping but non-identical
spans. Average mode gives partial matches half credit:

    recall    = (correct + partial/2) / (correct + missing + partial)
    precision = (correct + partial/2) / (correct + spurious + partial)

F combines the two as ((beta^2 + 1) * P * R) / (beta^2 * R + P). Note the
beta^2 factor sits on recall in the denominator; at beta = 1 this is the
usual harmonic mean, for other beta values it differs from the
conventional F-beta. All 0/0 quotients define to 0.
"""

from dataclasses import dataclass

from resumekit.errors import DocumentMismatchError, InvalidBetaError

MODES = ("strict", "lenient", "average")

CORRECT = "correct"
PARTIAL = "partial"
MISSING = "missing"
SPURIOUS = "spurious"

_VERDICT_ORDER = {CORRECT: 0, PARTIAL: 1, MISSING: 2, SPURIOUS: 3}


@dataclass(frozen=True)
class DiffCounts:
    """Alignment tallies; spurious is the diff tool's "false positives"."""

    correct: int = 0
    partial: int = 0
    missing: int = 0
    spurious: int = 0

    def __add__(self, other):
        return DiffCounts(self.correct + other.correct,
                          self.partial + other.partial,
                          self.missing + other.missing,
                          self.spurious + other.spurious)


@dataclass(frozen=True)
class MetricSet:
    """Precision/recall/F triple for one scoring mode."""

    precision: float
    recall: float
    f_measure: float
    mode: str = "average"
    beta: float = 1.0


@dataclass(frozen=True)
class AlignedPair:
    """One row of the diff: a key and/or response annotation plus verdict."""

    key: object = None
    response: object = None
    verdict: str = MISSING


def _overlap(a, b):
    return min(a.end, b.end) - max(a.start, b.start)


def align(key, response, doc_length=None):
    """Greedy one-to-one alignment per class.

    Exact (class, start, end) matches pair first as correct; remaining
    same-class overlapping spans pair as partial, maximal overlap first
    (ties by earlier key start, then earlier response start); leftovers
    are missing (keys) and spurious (responses). Every input annotation
    lands in exactly one pair.
    """
    if doc_length is not None:
        for ann in list(key) + list(response):
            if ann.end > doc_length or ann.start < 0:
                raise DocumentMismatchError(
                    f"span {ann.start}..{ann.end} outside document of length {doc_length}")

    classes = []
    for ann in list(key) + list(response):
        if ann.class_name not in classes:
            classes.append(ann.class_name)

    pairs = []
    for class_name in classes:
        keys = [a for a in key if a.class_name == class_name]
        responses = [a for a in response if a.class_name == class_name]

        by_span = {(a.start, a.end): a for a in responses}
        used_keys, used_responses = set(), set()
        for i, k in enumerate(keys):
            r = by_span.get((k.start, k.end))
            if r is not None and id(r) not in used_responses:
                pairs.append(AlignedPair(key=k, response=r, verdict=CORRECT))
                used_keys.add(i)
                used_responses.add(id(r))

        overlaps = []
        for i, k in enumerate(keys):
            if i in used_keys:
                continue
            for j, r in enumerate(responses):
                if id(r) in used_responses:
                    continue
                ov = _overlap(k, r)
                if ov > 0:
                    overlaps.append((-ov, k.start, r.start, i, j))
        overlaps.sort()
        paired_responses = set()
        for _, _, _, i, j in overlaps:
            if i in used_keys or j in paired_responses:
                continue
            used_keys.add(i)
            paired_responses.add(j)
            pairs.append(AlignedPair(key=keys[i], response=responses[j],
                                     verdict=PARTIAL))
        for j in paired_responses:
            used_responses.add(id(responses[j]))

        for i, k in enumerate(keys):
            if i not in used_keys:
                pairs.append(AlignedPair(key=k, verdict=MISSING))
        for r in responses:
            if id(r) not in used_responses:
                pairs.append(AlignedPair(response=r, verdict=SPURIOUS))

    def sort_key(pair):
        anchor = pair.key if pair.key is not None else pair.response
        return (anchor.start, anchor.end, anchor.class_name,
                _VERDICT_ORDER[pair.verdict])

    pairs.sort(key=sort_key)
    return pairs


def count(pairs):
    """Tally verdicts into DiffCounts."""
    tally = {CORRECT: 0, PARTIAL: 0, MISSING: 0, SPURIOUS: 0}
    for pair in pairs:
        tally[pair.verdict] += 1
    return DiffCounts(correct=tally[CORRECT], partial=tally[PARTIAL],
                      missing=tally[MISSING], spurious=tally[SPURIOUS])


def f_measure(precision, recall, beta=1.0):
    """F-measure with the beta^2 factor on recall in the denominator."""
    if not beta > 0:
        raise InvalidBetaError(f"beta must be > 0, got {beta}")
    denominator = (beta * beta * recall) + precision
    if denominator == 0:
        return 0.0
    return ((beta * beta + 1) * precision * recall) / denominator


def metrics(c, mode="average", beta=1.0):
    """Precision, recall and F for DiffCounts ``c`` in the given mode.

    strict counts partial matches as wrong, lenient as correct, average
    as half credit. 0/0 quotients define to 0.
    """
    if not beta > 0:
        raise InvalidBetaError(f"beta must be > 0, got {beta}")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r} (expected one of {MODES})")
    if mode == "strict":
        numerator = float(c.correct)
    elif mode == "lenient":
        numerator = float(c.correct + c.partial)
    else:
        numerator = c.correct + c.partial / 2.0
    recall_den = c.correct + c.missing + c.partial
    precision_den = c.correct + c.spurious + c.partial
    recall = numerator / recall_den if recall_den else 0.0
    precision = numerator / precision_den if precision_den else 0.0
    return MetricSet(precision=precision, recall=recall,
                     f_measure=f_measure(precision, recall, beta),
                     mode=mode, beta=beta)


@dataclass(frozen=True)
class ClassScore:
    """Per-class report row: counts, derived metrics, and an absence flag."""

    class_name: str
    counts: DiffCounts
    metrics: MetricSet
    absent: bool = False


def per_class_report(key, response, mode="average", beta=1.0, classes=None):
    """Score each class partition independently.

    Returns a map class name -> ClassScore. ``classes`` pins the report
    columns; by default the union of classes seen in either set is used.
    A class with no annotations at all scores (0, 0, 0) and is flagged
    absent.
    """
    if classes is None:
        classes = []
        for ann in list(key) + list(response):
            if ann.class_name not in classes:
                classes.append(ann.class_name)

    report = {}
    for class_name in classes:
        keys = [a for a in key if a.class_name == class_name]
        responses = [a for a in response if a.class_name == class_name]
        counts = count(align(keys, responses))
        report[class_name] = ClassScore(
            class_name=class_name,
            counts=counts,
            metrics=metrics(counts, mode, beta),
            absent=not keys and not responses)
    return report


def aggregate_counts(document_pairs):
    """Per-class DiffCounts summed over (key, response) document pairs."""
    totals = {}
    for key, response in document_pairs:
        classes = []
        for ann in list(key) + list(response):
            if ann.class_name not in classes:
                classes.append(ann.class_name)
        for class_name in classes:
            keys = [a for a in key if a.class_name == class_name]
            responses = [a for a in response if a.class_name == class_name]
            counts = count(align(keys, responses))
            totals[class_name] = totals.get(class_name, DiffCounts()) + counts
    return totals


def format_class_table(per_class, mode):
    """Aligned plain-text table: columns are classes, rows are P/R/F."""
    names = list(per_class)
    widths = [max(len(n), 9) for n in names]
    header = "           " + "  ".join(n.rjust(w) for n, w in zip(names, widths))
    rows = [header]
    for label, attr in (("Precision", "precision"), ("Recall", "recall"),
                        ("F-measure", "f_measure")):
        cells = []
        for name, width in zip(names, widths):
            value = getattr(per_class[name].metrics, attr)
            cells.append(f"{value:.2f}".rjust(width))
        rows.append(f"{label:<11}" + "  ".join(cells))
    rows.append(f"(mode: {mode})")
    return "\n".join(rows)


def csv_rows(per_class, micro=None):
    """CSV lines ``class,precision,recall,f_measure,mode`` (+ ALL row)."""
    lines = ["class,precision,recall,f_measure,mode"]
    for name, score in per_class.items():
        m = score.metrics
        lines.append(f"{name},{m.precision:.4f},{m.recall:.4f},{m.f_measure:.4f},{m.mode}")
    if micro is not None:
        lines.append(f"ALL,{micro.precision:.4f},{micro.recall:.4f},"
                     f"{micro.f_measure:.4f},{micro.mode}")
    return "\n".join(lines) + "\n"
