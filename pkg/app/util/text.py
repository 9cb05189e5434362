"""Quoting and number formatting shared by the shorthand lexer and emitter."""

import re
from decimal import Decimal
from typing import Union

_ESCAPE = re.compile(r'\\(["\\])')


def quote(text: str) -> str:
    """Wrap in double quotes, escaping backslashes and quotes."""
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def unquote(body: str) -> str:
    """Resolve \\" and \\\\ inside a quoted string body; other escapes stay as written."""
    return _ESCAPE.sub(r"\1", body)


def format_number(value: Union[int, float]) -> str:
    """Shortest round-trip decimal form, never in exponent notation.

    Floats keep a fractional part so they read back as floats.
    """
    if isinstance(value, int):
        return str(value)
    text = format(Decimal(repr(value)), "f")
    if "." not in text:
        text += ".0"
    return text


def parse_number(lexeme: str) -> Union[int, float]:
    if "." in lexeme:
        return float(lexeme)
    return int(lexeme)
