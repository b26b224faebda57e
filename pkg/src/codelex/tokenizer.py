"""Split programming identifiers into lowercase natural-language tokens.

Identifiers written against the usual coding conventions (camelCase,
PascalCase, snake_case, acronym runs, digit suffixes) are broken into the
words a human would read out of them: ``getCarType`` becomes ``["get",
"car", "type"]``.  Splits happen

* at underscores (which are consumed, never emitted),
* at a lowercase-to-uppercase transition,
* at any letter/digit boundary, and
* before the last capital of an all-caps run that is followed by a
  lowercase letter, so ``parseXMLFile`` yields ``xml`` + ``file``.

Every token is folded to lowercase.  Digit runs are kept as their own
tokens so that joining the tokens back together loses nothing but case and
separators; downstream keyword lookup simply skips the all-digit ones.
"""

from __future__ import annotations

import re

from .errors import InvalidIdentifier

_IDENTIFIER_RE = re.compile(r"[A-Za-z0-9_]+\Z")

# Ordered alternation: a caps run only counts as one token while it is not
# followed by a lowercase letter; otherwise its last capital belongs to the
# next word (the acronym rule).
_TOKEN_RE = re.compile(
    r"""
    [0-9]+              # digit run
  | [A-Z]+(?![a-z])     # caps run not starting a capitalized word
  | [A-Z][a-z]+         # capitalized word
  | [a-z]+              # lowercase run
    """,
    re.VERBOSE,
)


def tokenize(identifier: str) -> list[str]:
    """Return the ordered lowercase tokens of *identifier*.

    Raises InvalidIdentifier if the input is empty or contains anything
    other than letters, digits, and underscores.
    """
    if not identifier:
        raise InvalidIdentifier("identifier is empty")
    if not _IDENTIFIER_RE.match(identifier):
        raise InvalidIdentifier(
            f"identifier {identifier!r} contains characters outside [A-Za-z0-9_]"
        )
    return [match.group(0).lower() for match in _TOKEN_RE.finditer(identifier)]
