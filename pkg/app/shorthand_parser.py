"""Lexer and recursive descent parser for the visualization shorthand.

The parser follows the CFG bundled in resources/grammar.bnf: a `fields:`
section, then optional `filters:`, `sort:` and `chart:` sections, one item per
line. Errors are reported as diagnostics; after an error the parser skips to
the next line and carries on, so one input can yield several diagnostics.
"""

import logging
import math
import re
from enum import Enum
from typing import Callable, Dict, List, Optional, Set

from pydantic import BaseModel, ConfigDict, ValidationError

from models.diagnostic import Diagnostic, DiagnosticCode
from models.vizspec import (
    Aggregation, CategoricalFilter, ChartType, DateRangeFilter, Direction, Encoding, Field, FieldType,
    NumericRangeFilter, ParseResult, RelativeDateFilter, Sort, Units, VizSpec, is_iso_date, validate,
)
from util.text import parse_number, unquote

logger = logging.getLogger(__name__)


class TokenKind(str, Enum):
    KEYWORD = "keyword"
    STRING = "quoted-string"
    NUMBER = "number"
    DATE = "iso-date"
    NEWLINE = "newline"
    EOF = "end-of-input"


class Token(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: TokenKind
    lexeme: str
    line: int
    column: int

    def describe(self) -> str:
        if self.kind is TokenKind.STRING:
            return f'string "{self.lexeme}"'
        if self.kind in (TokenKind.NEWLINE, TokenKind.EOF):
            return self.kind.value
        return f"{self.kind.value} '{self.lexeme}'"


class LexResult(BaseModel):
    tokens: List[Token] = []
    diagnostics: List[Diagnostic] = []


_TOKEN_PATTERN = re.compile(r"""
    (?P<newline>\n)
  | (?P<blank>[ \t]+)
  | (?P<string>"(?:[^"\\\n]|\\[^\n])*")
  | (?P<date>[0-9]{4}-[0-9]{2}-[0-9]{2}(?:T[0-9]{2}:[0-9]{2}:[0-9]{2}(?:Z|[+-][0-9]{2}:[0-9]{2})?)?)
  | (?P<number>-?[0-9]+(?:\.[0-9]+)?)
  | (?P<keyword>[A-Za-z_][A-Za-z0-9_]*:?)
""", re.VERBOSE)

_KIND_BY_GROUP = {
    "date": TokenKind.DATE,
    "number": TokenKind.NUMBER,
    "keyword": TokenKind.KEYWORD,
}


def normalize_newlines(text: str) -> str:
    return text.replace("\r\n", "\n")


def lex(text: str) -> LexResult:
    """Split shorthand text into tokens.

    Spaces and tabs are dropped, runs of blank lines collapse to one newline
    token and an end-of-input token is always appended. A malformed line gets
    one diagnostic and the rest of it is skipped.
    """
    text = normalize_newlines(text)
    tokens: List[Token] = []
    diagnostics: List[Diagnostic] = []
    pos, line, line_start = 0, 1, 0

    while pos < len(text):
        column = pos - line_start + 1
        match = _TOKEN_PATTERN.match(text, pos)
        if match is None:
            if text[pos] == '"':
                diagnostics.append(Diagnostic.error(
                    DiagnosticCode.UNTERMINATED_STRING, "quoted string is not closed on its line",
                    line, column))
            else:
                diagnostics.append(Diagnostic.error(
                    DiagnosticCode.BAD_CHAR, f"illegal character {text[pos]!r}", line, column))
            end = text.find("\n", pos)
            pos = len(text) if end < 0 else end
            continue

        group = match.lastgroup
        if group == "newline":
            if not tokens or tokens[-1].kind is not TokenKind.NEWLINE:
                tokens.append(Token(kind=TokenKind.NEWLINE, lexeme="\n", line=line, column=column))
            line += 1
            line_start = match.end()
        elif group == "string":
            tokens.append(Token(kind=TokenKind.STRING, lexeme=unquote(match.group()[1:-1]),
                                line=line, column=column))
        elif group != "blank":
            tokens.append(Token(kind=_KIND_BY_GROUP[group], lexeme=match.group(), line=line, column=column))
        pos = match.end()

    tokens.append(Token(kind=TokenKind.EOF, lexeme="", line=line, column=pos - line_start + 1))
    return LexResult(tokens=tokens, diagnostics=diagnostics)


class Section(int, Enum):
    FIELDS = 0
    FILTERS = 1
    SORT = 2
    CHART = 3


SECTION_HEADERS = {
    "fields:": Section.FIELDS,
    "filters:": Section.FILTERS,
    "sort:": Section.SORT,
    "chart:": Section.CHART,
}

# code reported for a malformed line in each section
SECTION_CODES = {
    Section.FIELDS: DiagnosticCode.BAD_FIELD,
    Section.FILTERS: DiagnosticCode.BAD_FILTER,
    Section.SORT: DiagnosticCode.BAD_SORT,
    Section.CHART: DiagnosticCode.BAD_CHART,
}

FIELD_TYPE_KEYWORDS = {t.value for t in FieldType if t is not FieldType.UNSPECIFIED}
AGGREGATION_KEYWORDS = {a.value for a in Aggregation}
ENCODING_KEYWORDS = {e.value for e in Encoding}
UNIT_KEYWORDS = {u.value for u in Units}
DIRECTION_KEYWORDS = {d.value for d in Direction}
CHART_KEYWORDS = {c.value for c in ChartType}
FILTER_KEYWORDS = {"cat", "rd", "dr", "nr"}

KEYWORDS = (
    FIELD_TYPE_KEYWORDS | AGGREGATION_KEYWORDS | ENCODING_KEYWORDS | UNIT_KEYWORDS
    | DIRECTION_KEYWORDS | CHART_KEYWORDS | FILTER_KEYWORDS
    | {"ex", "values", "start", "end"} | set(SECTION_HEADERS)
)


class LineError(Exception):
    """Abandons the current line; the parser records the diagnostic and resynchronizes."""

    def __init__(self, code: DiagnosticCode, message: str, token: Token):
        super().__init__(message)
        self.diagnostic = Diagnostic.error(code, message, token.line, token.column)


class Parser:
    """Recursive descent over the token list produced by `lex`."""

    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0
        self.diagnostics: List[Diagnostic] = []
        self.section: Optional[Section] = None
        self.furthest = -1
        self.fields: List[Field] = []
        self.field_names: Set[str] = set()
        self.filters: list = []
        self.sorts: List[Sort] = []
        self.chart_type: Optional[ChartType] = None
        self.fields_header: Optional[Token] = None
        self.chart_header: Optional[Token] = None
        self.fields_reported = False
        self.field_lines_seen = False
        self._line_parsers: Dict[Section, Callable[[], None]] = {
            Section.FIELDS: self._field_line,
            Section.FILTERS: self._filter_line,
            Section.SORT: self._sort_line,
            Section.CHART: self._chart_line,
        }

    # token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind is not TokenKind.EOF:
            self.pos += 1
        return token

    def at_keyword(self, vocabulary) -> bool:
        token = self.current
        return token.kind is TokenKind.KEYWORD and token.lexeme in vocabulary

    def accept_keyword(self, vocabulary) -> Optional[Token]:
        if self.at_keyword(vocabulary):
            return self.advance()
        return None

    def expect_keyword(self, keyword: str, code: DiagnosticCode) -> Token:
        token = self.accept_keyword({keyword})
        if token is None:
            raise LineError(code, f"expected '{keyword}', got {self.current.describe()}", self.current)
        return token

    def expect_kind(self, kind: TokenKind, code: DiagnosticCode, what: str) -> Token:
        token = self.current
        if token.kind is not kind:
            raise LineError(code, f"expected {what}, got {token.describe()}", token)
        return self.advance()

    def expect_end(self, code: DiagnosticCode) -> None:
        """The line must end here; the newline itself is consumed by the main loop."""
        token = self.current
        if token.kind not in (TokenKind.NEWLINE, TokenKind.EOF):
            raise LineError(code, f"unexpected {token.describe()} at end of line", token)

    def skip_newlines(self) -> None:
        while self.current.kind is TokenKind.NEWLINE:
            self.advance()

    def synchronize(self) -> None:
        while self.current.kind not in (TokenKind.NEWLINE, TokenKind.EOF):
            self.advance()
        self.skip_newlines()

    def _unknown_or(self, code: DiagnosticCode, message: str) -> LineError:
        token = self.current
        if token.kind is TokenKind.KEYWORD and token.lexeme not in KEYWORDS:
            return LineError(DiagnosticCode.UNKNOWN_KEYWORD, f"unknown keyword '{token.lexeme}'", token)
        return LineError(code, message, token)

    # grammar

    def parse(self) -> ParseResult:
        self.skip_newlines()
        while self.current.kind is not TokenKind.EOF:
            try:
                self._line()
            except LineError as exc:
                self.diagnostics.append(exc.diagnostic)
                self.synchronize()
            self.skip_newlines()
        self._finish_sections()

        if self.diagnostics:
            return ParseResult(diagnostics=self.diagnostics)
        spec = VizSpec(
            fields=tuple(self.fields),
            filters=tuple(self.filters),
            sorts=tuple(self.sorts),
            chart_type=self.chart_type,
        )
        logger.debug("parsed %d fields, %d filters, %d sorts",
                     len(spec.fields), len(spec.filters), len(spec.sorts))
        return ParseResult(spec=spec, diagnostics=validate(spec))

    def _line(self) -> None:
        token = self.current
        if token.kind is TokenKind.KEYWORD and token.lexeme in SECTION_HEADERS:
            self._header(SECTION_HEADERS[token.lexeme])
            return
        if token.kind is TokenKind.KEYWORD and token.lexeme.endswith(":"):
            raise LineError(DiagnosticCode.UNKNOWN_KEYWORD, f"unknown section '{token.lexeme}'", token)
        if self.section is None:
            # treat what follows as the fields section so later lines still parse
            self.section = Section.FIELDS
            self.furthest = Section.FIELDS
            self.fields_reported = True
            raise LineError(DiagnosticCode.MISSING_FIELDS, "shorthand must start with 'fields:'", token)
        self._line_parsers[self.section]()

    def _header(self, section: Section) -> None:
        token = self.advance()
        out_of_order = section <= self.furthest
        if self.section is None and section is not Section.FIELDS:
            self.fields_reported = True
            self.diagnostics.append(Diagnostic.error(
                DiagnosticCode.MISSING_FIELDS, "shorthand must start with 'fields:'", token.line, token.column))
            out_of_order = False
        self.section = section
        self.furthest = max(self.furthest, section)
        if section is Section.FIELDS and self.fields_header is None:
            self.fields_header = token
        if section is Section.CHART and self.chart_header is None:
            self.chart_header = token
        if out_of_order:
            raise LineError(DiagnosticCode.SECTION_ORDER,
                            f"section '{token.lexeme}' is out of order; expected fields, filters, sort, chart",
                            token)
        self.expect_end(SECTION_CODES[section])

    def _finish_sections(self) -> None:
        eof = self.current
        if not self.field_lines_seen and not self.fields_reported:
            anchor = self.fields_header or eof
            self.diagnostics.append(Diagnostic.error(
                DiagnosticCode.MISSING_FIELDS, "the fields section lists no fields", anchor.line, anchor.column))
        if self.chart_header is not None and self.chart_type is None and not self._errors_after(self.chart_header):
            self.diagnostics.append(Diagnostic.error(
                DiagnosticCode.BAD_CHART, "'chart:' must be followed by a chart type",
                self.chart_header.line, self.chart_header.column))

    def _errors_after(self, token: Token) -> bool:
        return any(d.line >= token.line for d in self.diagnostics)

    def _positive_integer(self, token: Token, code: DiagnosticCode, what: str) -> int:
        try:
            value = int(token.lexeme)
        except ValueError:
            value = 0
        if value < 1:
            raise LineError(code, f"{what} must be a positive integer, got '{token.lexeme}'", token)
        return value

    def _build(self, factory, code: DiagnosticCode, anchor: Token, **values):
        try:
            return factory(**values)
        except ValidationError as exc:
            raise LineError(code, exc.errors()[0]["msg"], anchor) from exc

    # fields:

    def _field_line(self) -> None:
        self.field_lines_seen = True
        start = self.current
        field_type = FieldType.UNSPECIFIED
        if start.kind is TokenKind.KEYWORD:
            if start.lexeme not in FIELD_TYPE_KEYWORDS:
                raise self._unknown_or(DiagnosticCode.BAD_FIELD, f"unexpected {start.describe()}")
            field_type = FieldType(self.advance().lexeme)
        name = self.expect_kind(TokenKind.STRING, DiagnosticCode.BAD_FIELD, "a quoted field name")
        aggregation = self.accept_keyword(AGGREGATION_KEYWORDS)
        encoding = self.accept_keyword(ENCODING_KEYWORDS)
        if self.current.kind not in (TokenKind.NEWLINE, TokenKind.EOF):
            raise self._unknown_or(DiagnosticCode.BAD_FIELD, f"unexpected {self.current.describe()}")
        self.expect_end(DiagnosticCode.BAD_FIELD)

        if name.lexeme in self.field_names:
            raise LineError(DiagnosticCode.DUP_FIELD, f'field "{name.lexeme}" is listed more than once', name)
        self.fields.append(self._build(
            Field, DiagnosticCode.BAD_FIELD, name,
            name=name.lexeme,
            field_type=field_type,
            aggregation=Aggregation(aggregation.lexeme) if aggregation else None,
            encoding=Encoding(encoding.lexeme) if encoding else None,
        ))
        self.field_names.add(name.lexeme)

    # filters:

    def _filter_line(self) -> None:
        token = self.current
        if not self.at_keyword(FILTER_KEYWORDS):
            raise self._unknown_or(DiagnosticCode.BAD_FILTER,
                                   f"expected cat, rd, dr or nr, got {token.describe()}")
        kind = self.advance()
        name = self.expect_kind(TokenKind.STRING, DiagnosticCode.BAD_FILTER, "a quoted field name")
        if kind.lexeme == "cat":
            self._categorical(kind, name)
        elif kind.lexeme == "rd":
            self._relative_date(kind, name)
        elif kind.lexeme == "dr":
            self._date_range(kind, name)
        else:
            self._numeric_range(kind, name)

    def _categorical(self, kind: Token, name: Token) -> None:
        exclude = self.accept_keyword({"ex"}) is not None
        self.expect_keyword("values", DiagnosticCode.BAD_FILTER)
        values = []
        while self.current.kind is TokenKind.STRING:
            values.append(self.advance().lexeme)
        if not values:
            raise LineError(DiagnosticCode.BAD_FILTER,
                            f"expected at least one quoted value, got {self.current.describe()}", self.current)
        self.expect_end(DiagnosticCode.BAD_FILTER)
        self.filters.append(self._build(
            CategoricalFilter, DiagnosticCode.BAD_FILTER, kind,
            field_name=name.lexeme, exclude=exclude, values=tuple(values),
        ))

    def _relative_date(self, kind: Token, name: Token) -> None:
        # the grammar writes units before duration, the worked example the other way round
        duration = units = None
        for _ in range(2):
            token = self.current
            if token.kind is TokenKind.NUMBER and duration is None:
                duration = self._positive_integer(self.advance(), DiagnosticCode.BAD_FILTER, "duration")
            elif token.kind is TokenKind.KEYWORD and token.lexeme in UNIT_KEYWORDS and units is None:
                units = Units(self.advance().lexeme)
            else:
                raise LineError(DiagnosticCode.BAD_FILTER,
                                f"expected a duration and one of {', '.join(sorted(UNIT_KEYWORDS))}, "
                                f"got {token.describe()}", token)
        self.expect_end(DiagnosticCode.BAD_FILTER)
        self.filters.append(self._build(
            RelativeDateFilter, DiagnosticCode.BAD_FILTER, kind,
            field_name=name.lexeme, duration=duration, units=units,
        ))

    def _date_bound(self, keyword: str) -> Optional[str]:
        if self.accept_keyword({keyword}) is None:
            return None
        token = self.expect_kind(TokenKind.DATE, DiagnosticCode.BAD_FILTER, "an ISO-8601 date")
        if not is_iso_date(token.lexeme):
            raise LineError(DiagnosticCode.BAD_FILTER, f"'{token.lexeme}' is not a calendar date", token)
        return token.lexeme

    def _date_range(self, kind: Token, name: Token) -> None:
        start = self._date_bound("start")
        end = self._date_bound("end")
        self.expect_end(DiagnosticCode.BAD_FILTER)
        if start is None and end is None:
            raise LineError(DiagnosticCode.BAD_FILTER, "date range needs a start or an end", kind)
        self.filters.append(self._build(
            DateRangeFilter, DiagnosticCode.BAD_FILTER, kind,
            field_name=name.lexeme, start=start, end=end,
        ))

    def _number_bound(self, keyword: str):
        if self.accept_keyword({keyword}) is None:
            return None
        token = self.expect_kind(TokenKind.NUMBER, DiagnosticCode.BAD_FILTER, "a number")
        try:
            value = parse_number(token.lexeme)
        except ValueError:
            value = math.inf  # longer than int() accepts
        if isinstance(value, float) and not math.isfinite(value):
            raise LineError(DiagnosticCode.BAD_FILTER, f"'{token.lexeme}' is out of range", token)
        return value

    def _numeric_range(self, kind: Token, name: Token) -> None:
        aggregation = self.accept_keyword(AGGREGATION_KEYWORDS)
        start = self._number_bound("start")
        end = self._number_bound("end")
        self.expect_end(DiagnosticCode.BAD_FILTER)
        if start is None and end is None:
            raise LineError(DiagnosticCode.BAD_FILTER, "numeric range needs a start or an end", kind)
        if start is not None and end is not None and start > end:
            raise LineError(DiagnosticCode.BAD_FILTER, "numeric range start is greater than its end", kind)
        self.filters.append(self._build(
            NumericRangeFilter, DiagnosticCode.BAD_FILTER, kind,
            field_name=name.lexeme,
            aggregation=Aggregation(aggregation.lexeme) if aggregation else None,
            start=start, end=end,
        ))

    # sort:

    def _sort_line(self) -> None:
        first = self.current
        if first.kind is not TokenKind.STRING:
            raise self._unknown_or(DiagnosticCode.BAD_SORT,
                                   f"expected a quoted sort-by field, got {first.describe()}")
        sort_by = self.advance()
        aggregation = self.accept_keyword(AGGREGATION_KEYWORDS)
        direction = self.accept_keyword(DIRECTION_KEYWORDS)
        limit = None
        if self.current.kind is TokenKind.NUMBER:
            limit = self._positive_integer(self.advance(), DiagnosticCode.BAD_SORT, "limit")
        field_name = None
        if self.current.kind is TokenKind.STRING:
            field_name = self.advance().lexeme
        self.expect_end(DiagnosticCode.BAD_SORT)
        self.sorts.append(self._build(
            Sort, DiagnosticCode.BAD_SORT, first,
            sort_by_field=sort_by.lexeme,
            aggregation=Aggregation(aggregation.lexeme) if aggregation else None,
            direction=Direction(direction.lexeme) if direction else None,
            limit=limit,
            field_name=field_name,
        ))

    # chart:

    def _chart_line(self) -> None:
        token = self.current
        if self.chart_type is not None:
            raise LineError(DiagnosticCode.BAD_CHART, "the chart section takes a single chart type", token)
        if not self.at_keyword(CHART_KEYWORDS):
            raise LineError(DiagnosticCode.BAD_CHART, f"unknown chart type {token.describe()}", token)
        self.advance()
        self.expect_end(DiagnosticCode.BAD_CHART)
        self.chart_type = ChartType(token.lexeme)


def parse(text: str) -> ParseResult:
    """Parse shorthand text into a VizSpec.

    Lexing errors are returned on their own; otherwise every malformed line
    contributes one diagnostic. On success the result also carries the
    warnings of `validate`.
    """
    lexed = lex(text)
    if lexed.diagnostics:
        return ParseResult(diagnostics=lexed.diagnostics)
    return Parser(lexed.tokens).parse()
