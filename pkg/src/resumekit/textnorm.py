"""Case and diacritic folding used by every matching step.

Two flavours: :func:`fold` produces lookup keys (length may change),
:func:`fold_aligned` maps each character to exactly one character so
regex matches on the folded copy keep the original offsets.
"""

import unicodedata


def fold(text: str) -> str:
    """Fold case and strip diacritics: "Féminin" -> "feminin"."""
    decomposed = unicodedata.normalize("NFD", text)
    stripped = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
    return stripped.casefold()


def fold_aligned(text: str) -> str:
    """Per-character fold; the result has the same length as ``text``.

    Characters whose decomposition is empty (lone combining marks) are
    kept as-is so offsets never shift.
    """
    out = []
    for ch in text:
        decomposed = unicodedata.normalize("NFD", ch)
        base = "".join(c for c in decomposed if not unicodedata.combining(c))
        folded = (base or ch).lower()
        out.append(folded[0] if folded else ch)
    return "".join(out)
