# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled token scanner; mirrors resumekit._scan_py exactly."""

KIND_WORD = 0
KIND_NUMBER = 1
KIND_PUNCT = 2


def scan_tokens(unicode text):
    """Scan ``text`` into (start, end, kind) spans.

    Same contract and same output as the pure-Python scanner.
    """
    cdef Py_ssize_t i = 0, j
    cdef Py_ssize_t n = len(text)
    cdef Py_UCS4 ch, c
    spans = []
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isalpha():
            j = i + 1
            while j < n and text[j].isalpha():
                j += 1
            spans.append((i, j, 0))
            i = j
        elif ch.isdigit():
            j = i + 1
            while j < n:
                c = text[j]
                if c.isdigit():
                    j += 1
                elif (c == u'/' or c == u'-' or c == u'.') and j + 1 < n and text[j + 1].isdigit():
                    j += 2
                else:
                    break
            spans.append((i, j, 1))
            i = j
        else:
            spans.append((i, i + 1, 2))
            i += 1
    return spans
