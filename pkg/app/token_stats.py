"""Token and character counts for shorthand versus full-spec text.

The built-in counter is a vocabulary-free stand-in for a BPE tokenizer:

  - each run of letters, digits or underscores costs ceil(len / 4) tokens,
  - every other non-whitespace character costs 1,
  - every line break costs 1,
  - spaces and tabs are free.

Exact counts depend on the tokenizer, so only the ratios are comparable
across counters. `tiktoken_counter` plugs in a production vocabulary.
"""

import logging
import re
from typing import Callable, Optional

from models.stats import TokenStats

logger = logging.getLogger(__name__)

TokenCounter = Callable[[str], int]

_PIECE = re.compile(r"(?P<word>\w+)|(?P<newline>\r\n|\r|\n)|(?P<symbol>[^\w\s])")


def heuristic_counter(text: str) -> int:
    total = 0
    for match in _PIECE.finditer(text):
        if match.lastgroup == "word":
            total += -(-len(match.group()) // 4)
        else:
            total += 1
    return total


def tiktoken_counter(encoding_name: str = "cl100k_base") -> TokenCounter:
    """Counter backed by a tiktoken encoding; tiktoken is an optional dependency."""
    try:
        import tiktoken
    except ImportError as exc:
        raise RuntimeError("tiktoken is not installed; pip install tiktoken") from exc
    encoding = tiktoken.get_encoding(encoding_name)

    def count(text: str) -> int:
        return len(encoding.encode(text, disallowed_special=()))

    return count


def count_tokens(text: str, counter: TokenCounter = heuristic_counter) -> int:
    return counter(text)


def _ratio(numerator: int, denominator: int) -> Optional[float]:
    if denominator == 0:
        return None
    return numerator / denominator


def compare(shorthand_text: str, full_text: str, counter: TokenCounter = heuristic_counter) -> TokenStats:
    """Measure how much shorter the shorthand is than its full spec."""
    shorthand_tokens = count_tokens(shorthand_text, counter)
    full_tokens = count_tokens(full_text, counter)
    stats = TokenStats(
        shorthand_tokens=shorthand_tokens,
        full_tokens=full_tokens,
        shorthand_chars=len(shorthand_text),
        full_chars=len(full_text),
        token_ratio=_ratio(full_tokens, shorthand_tokens),
        char_ratio=_ratio(len(full_text), len(shorthand_text)),
    )
    logger.debug("token ratio %s, char ratio %s", stats.token_ratio, stats.char_ratio)
    return stats
