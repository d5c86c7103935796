"""Annotation pipeline: sentence/token splitting, tagging, filtering, and
ontology-driven annotation via gazetteer lookup and pattern recognizers.

Gazetteer matching is exact after case/diacritic folding; multi-word
instance labels match contiguous runs of the filtered token stream
(dropped stopwords and punctuation inside the label are absorbed into
the span, which never crosses a line break). Date, Email, Phone and Fax
have unbounded instance sets and are matched by rule instead; on span
overlap a pattern annotation wins over a gazetteer one.
"""

import re
from dataclasses import dataclass, replace

from resumekit import scanner
from resumekit.errors import FileFormatError
from resumekit.textnorm import fold, fold_aligned

WORD = "word"
NUMBER = "number"
PUNCTUATION = "punctuation"

_KIND_NAMES = {scanner.KIND_WORD: WORD,
               scanner.KIND_NUMBER: NUMBER,
               scanner.KIND_PUNCT: PUNCTUATION}

GAZETTEER = "gazetteer"
PATTERN = "pattern"

# Tag-tie priority and the POS set Phase 3 keeps.
_POS_PRIORITY = {"N": 0, "A": 1, "ADV": 2, "V": 3}

_SENTENCE_FINAL = ".!?"


@dataclass(frozen=True)
class SourceDocument:
    """A plain-text resume; offsets everywhere are code-point offsets."""

    id: str
    text: str
    char_count: int = -1

    def __post_init__(self):
        if self.char_count < 0:
            object.__setattr__(self, "char_count", len(self.text))
        elif self.char_count != len(self.text):
            raise ValueError(
                f"char_count {self.char_count} != len(text) {len(self.text)}")


@dataclass(frozen=True)
class Token:
    """A surface span of the document, optionally tagged with lemma/POS."""

    surface: str
    start: int
    end: int
    kind: str
    lemma: str | None = None
    pos: str | None = None


@dataclass(frozen=True)
class Annotation:
    """A character span bound to an ontology class."""

    start: int
    end: int
    class_name: str
    matched_text: str
    recognizer: str = GAZETTEER


def split_sentences(doc):
    """Sentence spans: boundaries at final punctuation (. ! ?) and newlines.

    Spans are trimmed to non-whitespace ends; together they cover every
    non-whitespace character exactly once.
    """
    text = doc.text
    n = len(text)
    spans = []

    def emit(start, end):
        while end > start and text[end - 1].isspace():
            end -= 1
        if end > start:
            spans.append((start, end))

    start = None
    i = 0
    while i < n:
        ch = text[i]
        if ch == "\n":
            if start is not None:
                emit(start, i)
                start = None
            i += 1
            continue
        if start is None and not ch.isspace():
            start = i
        if start is not None and ch in _SENTENCE_FINAL:
            j = i
            while j < n and text[j] in _SENTENCE_FINAL:
                j += 1
            if j >= n or text[j].isspace():
                emit(start, j)
                start = None
                i = j
                continue
        i += 1
    if start is not None:
        emit(start, n)
    return spans


def tokenize(doc):
    """Split the document into word / number / punctuation tokens."""
    text = doc.text
    return [Token(surface=text[s:e], start=s, end=e, kind=_KIND_NAMES[k])
            for s, e, k in scanner.scan_tokens(text)]


def tag_tokens(tokens, lex):
    """Attach lemma and POS to word tokens found in the lexicon.

    Ambiguous forms take the entry with the highest POS priority
    (N, then A, ADV, V); misses stay untagged; other kinds pass through.
    """
    out = []
    for token in tokens:
        if token.kind != WORD:
            out.append(token)
            continue
        entries = lex.lookup(token.surface)
        if not entries:
            out.append(token)
            continue
        best = min(entries, key=lambda e: _POS_PRIORITY[e.pos])
        out.append(replace(token, lemma=best.lemma, pos=best.pos))
    return out


def load_stopwords(path):
    """Folded stopword set from a one-word-per-line file (# comments ok)."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            words.add(fold(line))
    return frozenset(words)


def filter_tokens(tokens, stopwords=frozenset()):
    """Phase-3 refinement: drop punctuation and stopwords, keep the rest.

    Tagged content words (N, A, ADV, V), numbers, and untagged words
    (candidate proper nouns) survive; relative order is preserved.
    """
    kept = []
    for token in tokens:
        if token.kind == PUNCTUATION:
            continue
        if fold(token.surface) in stopwords:
            continue
        kept.append(token)
    return kept


class GazetteerIndex:
    """Instance labels and variants tokenized + folded for run matching."""

    def __init__(self, phrases):
        self._phrases = phrases
        self._max_len = max((len(p) for cands in phrases.values()
                             for p, _ in cands), default=0)

    @classmethod
    def from_schema(cls, schema, stopwords=frozenset()):
        phrases = {}
        seen = set()
        for entry in schema.instances:
            for form in entry.forms():
                toks = [form[s:e] for s, e, k in scanner.scan_tokens(form)
                        if k != scanner.KIND_PUNCT]
                folded = tuple(fold(t) for t in toks if fold(t) not in stopwords)
                if not folded:
                    continue
                key = (folded, entry.class_name)
                if key in seen:
                    continue
                seen.add(key)
                phrases.setdefault(folded[0], []).append((folded, entry.class_name))
        for cands in phrases.values():
            cands.sort(key=lambda c: (-len(c[0]), c[1]))
        return cls(phrases)

    def match(self, doc, tokens):
        """Annotations for every instance run in the filtered token stream."""
        text = doc.text
        folded = [fold(t.surface) for t in tokens]
        candidates = set()
        for i, head in enumerate(folded):
            for phrase, class_name in self._phrases.get(head, ()):
                length = len(phrase)
                if i + length > len(tokens):
                    continue
                if tuple(folded[i:i + length]) != phrase:
                    continue
                start, end = tokens[i].start, tokens[i + length - 1].end
                if length > 1 and "\n" in text[start:end]:
                    continue
                candidates.add((start, end, class_name))
        # Overlaps resolve to the longer span, then the earlier start.
        ordered = sorted(candidates, key=lambda c: (-(c[1] - c[0]), c[0], c[2]))
        kept = []
        for start, end, class_name in ordered:
            if any(s < end and start < e for s, e, _ in kept):
                continue
            kept.append((start, end, class_name))
        kept.sort()
        return [Annotation(start=s, end=e, class_name=c,
                           matched_text=text[s:e], recognizer=GAZETTEER)
                for s, e, c in kept]


def match_gazetteer(doc, tokens, schema, stopwords=frozenset(), index=None):
    """Match filtered tokens against the schema's instance gazetteers."""
    if index is None:
        index = GazetteerIndex.from_schema(schema, stopwords)
    return index.match(doc, tokens)


_EMAIL_RE = re.compile(r"[A-Za-z0-9._%+\-]+@[A-Za-z0-9.\-]+\.[A-Za-z]{2,}")
_DATE_NUMERIC_RE = re.compile(r"(?<![\d/])\d{1,2}/\d{1,2}/\d{4}(?![\d/])")
_MONTHS = ("janvier|fevrier|mars|avril|mai|juin|juillet|aout|septembre"
           "|octobre|novembre|decembre"
           "|january|february|march|april|may|june|july|august|september"
           "|october|november|december")
_DATE_TEXTUAL_RE = re.compile(
    rf"(?<![a-z0-9])\d{{1,2}}(?:er)?[ ]+(?:{_MONTHS})[ ]+\d{{4}}(?!\d)")
_PHONE_RE = re.compile(r"\+?\d(?:[ .\-]?\d)+")
_FAX_WINDOW = 24


def _overlaps(span, spans):
    start, end = span
    return any(s < end and start < e for s, e in spans)


def recognize_patterns(doc):
    """Rule-based Date / Email / Phone / Fax annotations.

    Emails win over dates, dates over phone numbers, so a birth date is
    never also reported as a phone number. A digit run needs at least 8
    digits to count as Phone/Fax; the word "fax" within the 24 preceding
    characters selects Fax.
    """
    text = doc.text
    folded = fold_aligned(text)
    results = []
    taken = []

    for m in _EMAIL_RE.finditer(text):
        results.append((m.start(), m.end(), "Email"))
        taken.append((m.start(), m.end()))

    date_candidates = [(m.start(), m.end()) for m in _DATE_NUMERIC_RE.finditer(text)]
    date_candidates += [(m.start(), m.end()) for m in _DATE_TEXTUAL_RE.finditer(folded)]
    date_candidates.sort(key=lambda c: (-(c[1] - c[0]), c[0]))
    for start, end in date_candidates:
        if _overlaps((start, end), taken):
            continue
        results.append((start, end, "Date"))
        taken.append((start, end))

    for m in _PHONE_RE.finditer(text):
        start, end = m.start(), m.end()
        if sum(ch.isdigit() for ch in m.group()) < 8:
            continue
        if _overlaps((start, end), taken):
            continue
        window = folded[max(0, start - _FAX_WINDOW):start]
        results.append((start, end, "Fax" if "fax" in window else "Phone"))
        taken.append((start, end))

    results.sort()
    return [Annotation(start=s, end=e, class_name=c,
                       matched_text=text[s:e], recognizer=PATTERN)
            for s, e, c in results]


def annotate(doc, schema, lex, stopwords=frozenset(), index=None):
    """Run Phases 2-4: tokenize, tag, filter, then gazetteer + patterns.

    Deterministic for fixed inputs; on overlapping spans the pattern
    annotation wins (structured entities are higher precision).
    """
    tokens = tokenize(doc)
    tagged = tag_tokens(tokens, lex)
    filtered = filter_tokens(tagged, stopwords)
    patterns = recognize_patterns(doc)
    gazetteer = match_gazetteer(doc, filtered, schema, stopwords, index=index)

    pattern_spans = [(a.start, a.end) for a in patterns]
    merged = list(patterns)
    merged += [a for a in gazetteer
               if not _overlaps((a.start, a.end), pattern_spans)]
    unique = {(a.start, a.end, a.class_name): a for a in merged}
    return [unique[key] for key in sorted(unique)]


class Annotator:
    """Bundles the loaded knowledge bases for repeated annotation.

    The gazetteer index is built lazily on the first document and then
    amortized across the batch.
    """

    def __init__(self, schema, lexicon, stopwords=frozenset()):
        self.schema = schema
        self.lexicon = lexicon
        self.stopwords = stopwords
        self._index = None

    def annotate(self, doc):
        if self._index is None:
            self._index = GazetteerIndex.from_schema(self.schema, self.stopwords)
        return annotate(doc, self.schema, self.lexicon, self.stopwords,
                        index=self._index)

    def annotate_text(self, doc_id, text):
        return self.annotate(SourceDocument(id=doc_id, text=text))


def _escape(text):
    return (text.replace("\\", "\\\\")
                .replace("\t", "\\t")
                .replace("\n", "\\n")
                .replace("\r", "\\r"))


def _unescape(text):
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            nxt = text[i + 1]
            out.append({"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}.get(nxt, "\\" + nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def write_annotations(annotations):
    """Serialize annotations to the tab-separated gold format."""
    lines = []
    for a in sorted(annotations, key=lambda a: (a.start, a.end, a.class_name)):
        lines.append(f"{a.start}\t{a.end}\t{a.class_name}\t{_escape(a.matched_text)}\n")
    return "".join(lines)


def read_annotations(path):
    """Read a tab-separated annotation file (the gold-standard format)."""
    annotations = []
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise FileFormatError(path, line_no,
                                      "expected start<TAB>end<TAB>class<TAB>text")
            try:
                start, end = int(parts[0]), int(parts[1])
            except ValueError:
                raise FileFormatError(path, line_no, "offsets must be integers")
            if end <= start or start < 0:
                raise FileFormatError(path, line_no, f"bad span {start}..{end}")
            annotations.append(Annotation(start=start, end=end,
                                          class_name=parts[2],
                                          matched_text=_unescape(parts[3])))
    return annotations
