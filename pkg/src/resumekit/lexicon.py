"""DELAS-style morphological dictionary: surface form -> lemma + POS code.

File format: one ``surface,lemma.POS`` per line, UTF-8, ``#`` comments and
blank lines ignored. Surfaces and lemmas are simple lowercase words with
no internal separators; POS is one of V, N, A, ADV.
"""

from dataclasses import dataclass, field

from resumekit.errors import FileFormatError, PosCodeError
from resumekit.textnorm import fold

POS_CODES = ("V", "N", "A", "ADV")

_FORBIDDEN = set(" ,.\t-")


@dataclass(frozen=True)
class LexiconEntry:
    """One dictionary row: an inflected surface with its lemma and POS."""

    surface: str
    lemma: str
    pos: str


@dataclass(frozen=True, eq=False)
class Lexicon:
    """Immutable surface->entries multimap, indexed by folded surface."""

    entries: tuple[LexiconEntry, ...] = ()
    _index: dict[str, tuple[LexiconEntry, ...]] = field(default_factory=dict, repr=False)

    @property
    def entry_count(self):
        return len(self.entries)

    def lookup(self, surface):
        """All entries whose folded surface matches ``surface`` folded."""
        return list(self._index.get(fold(surface), ()))

    def __eq__(self, other):
        # Entry order is a file artifact; lexicons are equal by content.
        if not isinstance(other, Lexicon):
            return NotImplemented
        return frozenset(self.entries) == frozenset(other.entries)

    def __hash__(self):
        return hash(frozenset(self.entries))


def _check_word(word, what, path, line_no):
    if not word:
        raise FileFormatError(path, line_no, f"empty {what}")
    if word != word.lower():
        raise FileFormatError(path, line_no, f"{what} {word!r} is not lowercase")
    if any(ch in _FORBIDDEN for ch in word):
        raise FileFormatError(path, line_no, f"{what} {word!r} contains a separator")


def parse_lexicon(text, path="<string>"):
    """Parse lexicon source text into a Lexicon."""
    entries = []
    seen = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "," not in line:
            raise FileFormatError(path, line_no,
                                  f"expected surface,lemma.POS, got {line!r}")
        surface, _, rest = line.partition(",")
        lemma, dot, pos = rest.rpartition(".")
        if not dot:
            raise FileFormatError(path, line_no,
                                  f"missing .POS suffix in {line!r}")
        surface = surface.strip()
        lemma = lemma.strip()
        pos = pos.strip()
        if pos not in POS_CODES:
            raise PosCodeError(path, line_no,
                               f"POS code {pos!r} not in {{V, N, A, ADV}}")
        _check_word(surface, "surface", path, line_no)
        _check_word(lemma, "lemma", path, line_no)
        key = (surface, lemma, pos)
        if key in seen:
            continue
        seen.add(key)
        entries.append(LexiconEntry(surface=surface, lemma=lemma, pos=pos))

    index: dict[str, list[LexiconEntry]] = {}
    for entry in entries:
        index.setdefault(fold(entry.surface), []).append(entry)
    return Lexicon(entries=tuple(entries),
                   _index={k: tuple(v) for k, v in index.items()})


def load_lexicon(path):
    """Load a lexicon file; duplicates are removed, entry_count reported."""
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh.read(), path=path)


def lookup(lex, surface):
    """Case- and diacritic-insensitive lookup; empty list when unknown."""
    return lex.lookup(surface)


def dump_lexicon(lex):
    """Canonical text form: sorted, deduplicated, one entry per line.

    Reloading the dump yields an equal Lexicon.
    """
    rows = sorted((e.surface, e.lemma, e.pos) for e in lex.entries)
    return "".join(f"{s},{l}.{p}\n" for s, l, p in rows)
