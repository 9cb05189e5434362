from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


class DiagnosticCode(str, Enum):
    """Registry of every diagnostic code the toolkit can report.

    Lexer: UNTERMINATED_STRING, BAD_CHAR.
    Parser: MISSING_FIELDS, SECTION_ORDER, UNKNOWN_KEYWORD, DUP_FIELD,
    BAD_FIELD, BAD_FILTER, BAD_SORT, BAD_CHART.
    Model validation: DUP_FIELD, DATE_AGG_ON_MEASURE, SORT_UNKNOWN_FIELD.
    Full-spec documents: BAD_JSON, MISSING_KEY, BAD_ENUM, BAD_TYPE, BAD_NAME,
    BAD_FIELD_ATTRS, BAD_FILTER, BAD_SORT, MISSING_FIELDS, UNKNOWN_KEY,
    UNSPECIFIED_FIELD_TYPE.
    """

    UNTERMINATED_STRING = "UNTERMINATED_STRING"
    BAD_CHAR = "BAD_CHAR"
    MISSING_FIELDS = "MISSING_FIELDS"
    SECTION_ORDER = "SECTION_ORDER"
    UNKNOWN_KEYWORD = "UNKNOWN_KEYWORD"
    DUP_FIELD = "DUP_FIELD"
    BAD_FIELD = "BAD_FIELD"
    BAD_FILTER = "BAD_FILTER"
    BAD_SORT = "BAD_SORT"
    BAD_CHART = "BAD_CHART"
    DATE_AGG_ON_MEASURE = "DATE_AGG_ON_MEASURE"
    SORT_UNKNOWN_FIELD = "SORT_UNKNOWN_FIELD"
    BAD_JSON = "BAD_JSON"
    MISSING_KEY = "MISSING_KEY"
    BAD_ENUM = "BAD_ENUM"
    BAD_TYPE = "BAD_TYPE"
    BAD_NAME = "BAD_NAME"
    BAD_FIELD_ATTRS = "BAD_FIELD_ATTRS"
    UNKNOWN_KEY = "UNKNOWN_KEY"
    UNSPECIFIED_FIELD_TYPE = "UNSPECIFIED_FIELD_TYPE"


class Diagnostic(BaseModel):
    """A parse or validation finding with a 1-based source position."""

    model_config = ConfigDict(frozen=True)

    severity: Severity
    code: DiagnosticCode
    message: str
    line: int = Field(1, ge=1)
    column: int = Field(1, ge=1)
    # document path for full-spec diagnostics, e.g. "filters[0].start"
    path: Optional[str] = None

    @classmethod
    def error(cls, code: DiagnosticCode, message: str, line: int = 1, column: int = 1,
              path: Optional[str] = None) -> "Diagnostic":
        return cls(severity=Severity.ERROR, code=code, message=message,
                   line=line, column=column, path=path)

    @classmethod
    def warning(cls, code: DiagnosticCode, message: str, line: int = 1, column: int = 1,
                path: Optional[str] = None) -> "Diagnostic":
        return cls(severity=Severity.WARNING, code=code, message=message,
                   line=line, column=column, path=path)

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def format(self) -> str:
        """Render as `<line>:<col>: <severity> <code>: <message>`"""
        message = self.message if self.path is None else f"{self.path}: {self.message}"
        return f"{self.line}:{self.column}: {self.severity.value} {self.code.value}: {message}"


class DiagnosticError(ValueError):
    """Raised when an operation that requires a valid spec receives an invalid one."""

    def __init__(self, diagnostics: List[Diagnostic]):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0].code.value if self.diagnostics else "UNKNOWN"
        super().__init__(f"invalid spec: {first}")
