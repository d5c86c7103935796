"""Pure-Python token scanner.

Reference implementation of the hot loop; ``resumekit._scan_c`` is the
compiled twin and must produce identical output for identical input.
"""

KIND_WORD = 0
KIND_NUMBER = 1
KIND_PUNCT = 2

_NUMBER_SEPS = "/-."


def scan_tokens(text):
    """Scan ``text`` into (start, end, kind) spans.

    Maximal letter runs are words, digit runs with digit-internal
    separators (/ - .) are numbers, every other non-space character is
    one punctuation span. Whitespace is skipped.
    """
    spans = []
    n = len(text)
    i = 0
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isalpha():
            j = i + 1
            while j < n and text[j].isalpha():
                j += 1
            spans.append((i, j, KIND_WORD))
            i = j
        elif ch.isdigit():
            j = i + 1
            while j < n:
                c = text[j]
                if c.isdigit():
                    j += 1
                elif c in _NUMBER_SEPS and j + 1 < n and text[j + 1].isdigit():
                    j += 2
                else:
                    break
            spans.append((i, j, KIND_NUMBER))
            i = j
        else:
            spans.append((i, i + 1, KIND_PUNCT))
            i += 1
    return spans
