"""Typed model of a visualization spec and the cross-element validation rules."""

import math
import re
from datetime import date, time
from enum import Enum
from typing import Any, List, Literal, Optional, Tuple, Union

from pydantic import AfterValidator, BaseModel, ConfigDict, Field as PydanticField, ValidationInfo
from pydantic import StrictBool, StrictFloat, StrictInt, StrictStr, field_validator, model_serializer, model_validator
from pydantic.alias_generators import to_camel
from pydantic_core import PydanticCustomError
from typing_extensions import Annotated

from models.diagnostic import Diagnostic, DiagnosticCode


class FieldType(str, Enum):
    CONTINUOUS_MEASURE = "cm"
    CONTINUOUS_DIMENSION = "cd"
    DISCRETE_DIMENSION = "dd"
    UNSPECIFIED = "unspecified"


class Aggregation(str, Enum):
    COUNT = "count"
    COUNT_DISTINCT = "countDistinct"
    SUM = "sum"
    AVERAGE = "average"
    MAX = "max"
    MIN = "min"
    MEDIAN = "median"
    YEAR = "year"
    QUARTER = "quarter"
    MONTH = "month"
    WEEK = "week"
    DAY = "day"
    HOUR = "hour"
    MINUTE = "minute"
    SECOND = "second"


DATE_AGGREGATIONS = frozenset({
    Aggregation.YEAR, Aggregation.QUARTER, Aggregation.MONTH, Aggregation.WEEK,
    Aggregation.DAY, Aggregation.HOUR, Aggregation.MINUTE, Aggregation.SECOND,
})


class Encoding(str, Enum):
    COLOR = "color"
    SIZE = "size"
    SHAPE = "shape"
    X = "x"
    Y = "y"
    TEXT = "text"


class Units(str, Enum):
    DAYS = "days"
    WEEKS = "weeks"
    MONTHS = "months"
    QUARTERS = "quarters"
    YEARS = "years"


class Direction(str, Enum):
    ASC = "asc"
    DESC = "desc"


class ChartType(str, Enum):
    TEXT = "text"
    HEATMAP = "heatmap"
    BAR = "bar"
    STACKED_BAR = "stackedbar"
    LINE = "line"
    AREA = "area"
    GANTT = "gantt"
    SCATTERPLOT = "scatterplot"
    HISTOGRAM = "histogram"
    SYMBOLMAP = "symbolmap"
    FILLEDMAP = "filledmap"
    TREEMAP = "treemap"
    PIE = "pie"


_ISO_DATE = re.compile(
    r"(?P<date>[0-9]{4}-[0-9]{2}-[0-9]{2})"
    r"(?:T(?P<time>[0-9]{2}:[0-9]{2}:[0-9]{2})(?P<offset>Z|[+-](?P<oh>[0-9]{2}):(?P<om>[0-9]{2}))?)?"
)


def is_iso_date(text: str) -> bool:
    """Pattern and calendar check; time zone semantics are not interpreted."""
    match = _ISO_DATE.fullmatch(text)
    if match is None:
        return False
    try:
        date.fromisoformat(match.group("date"))
        if match.group("time"):
            time.fromisoformat(match.group("time"))
    except ValueError:
        return False
    if match.group("oh") is not None:
        return int(match.group("oh")) <= 23 and int(match.group("om")) <= 59
    return True


def _check_name(value: str) -> str:
    if not value:
        raise PydanticCustomError("bad_name", "field name must not be empty")
    if "\n" in value or "\r" in value:
        raise PydanticCustomError("bad_name", "field name must not contain a line break")
    return value


def _check_value(value: str) -> str:
    if "\n" in value or "\r" in value:
        raise PydanticCustomError("bad_filter", "filter value must not contain a line break")
    return value


def _check_date(value: str) -> str:
    if not is_iso_date(value):
        raise PydanticCustomError("bad_filter", "'{value}' is not an ISO-8601 date", {"value": value})
    return value


# longest integer int() and str() convert under the interpreter's default limit
MAX_INT_DIGITS = 4300
_INT_LIMIT = 10 ** MAX_INT_DIGITS


def _check_number(value: Union[int, float]) -> Union[int, float]:
    if isinstance(value, float) and not math.isfinite(value):
        raise PydanticCustomError("bad_filter", "range bound must be a finite number")
    if isinstance(value, int) and abs(value) >= _INT_LIMIT:
        raise PydanticCustomError("bad_filter", "range bound has more than {digits} digits",
                                  {"digits": MAX_INT_DIGITS})
    return value


FieldName = Annotated[StrictStr, AfterValidator(_check_name)]
FieldValue = Annotated[StrictStr, AfterValidator(_check_value)]
IsoDate = Annotated[StrictStr, AfterValidator(_check_date)]
Number = Annotated[Union[StrictInt, StrictFloat], AfterValidator(_check_number)]


# validation context flag: the input is a full-spec document, keyed by alias
DOCUMENT_CONTEXT = "document"


class SpecModel(BaseModel):
    """Immutable base; camelCase aliases are the full-spec document keys."""

    model_config = ConfigDict(frozen=True, alias_generator=to_camel, populate_by_name=True)

    @model_validator(mode="before")
    @classmethod
    def _document_keys_only(cls, data: Any, info: ValidationInfo) -> Any:
        """Under the document context snake_case names are not keys, so they are dropped."""
        if isinstance(data, dict) and info.context and info.context.get(DOCUMENT_CONTEXT):
            names = {name for name, field in cls.model_fields.items() if field.alias != name}
            return {key: value for key, value in data.items() if key not in names}
        return data


class Field(SpecModel):
    name: FieldName
    field_type: FieldType = FieldType.UNSPECIFIED
    aggregation: Optional[Aggregation] = None
    encoding: Optional[Encoding] = None


class CategoricalFilter(SpecModel):
    filter_type: Literal["categorical"] = "categorical"
    field_name: FieldName
    exclude: StrictBool = False
    values: Tuple[FieldValue, ...]

    @field_validator("values")
    @classmethod
    def _values_not_empty(cls, values):
        if not values:
            raise PydanticCustomError("bad_filter", "categorical filter needs at least one value")
        return values

    @model_serializer(mode="wrap")
    def _omit_default_exclude(self, handler):
        data = handler(self)
        if not self.exclude:
            data.pop("exclude", None)
        return data


class RelativeDateFilter(SpecModel):
    filter_type: Literal["relative-date"] = "relative-date"
    field_name: FieldName
    duration: StrictInt
    units: Units

    @field_validator("duration")
    @classmethod
    def _positive_duration(cls, duration):
        if duration < 1:
            raise PydanticCustomError("bad_filter", "duration must be a positive integer")
        return duration


class DateRangeFilter(SpecModel):
    filter_type: Literal["date-range"] = "date-range"
    field_name: FieldName
    start: Optional[IsoDate] = None
    end: Optional[IsoDate] = None

    @model_validator(mode="after")
    def _has_bound(self):
        if self.start is None and self.end is None:
            raise PydanticCustomError("bad_filter", "date range needs a start or an end")
        return self


class NumericRangeFilter(SpecModel):
    filter_type: Literal["numeric-range"] = "numeric-range"
    field_name: FieldName
    aggregation: Optional[Aggregation] = None
    start: Optional[Number] = None
    end: Optional[Number] = None

    @model_validator(mode="after")
    def _bounds_ordered(self):
        if self.start is None and self.end is None:
            raise PydanticCustomError("bad_filter", "numeric range needs a start or an end")
        if self.start is not None and self.end is not None and self.start > self.end:
            raise PydanticCustomError("bad_filter", "numeric range start is greater than its end")
        return self


Filter = Annotated[
    Union[CategoricalFilter, RelativeDateFilter, DateRangeFilter, NumericRangeFilter],
    PydanticField(discriminator="filter_type"),
]

FILTER_TYPES = ("categorical", "relative-date", "date-range", "numeric-range")


class Sort(SpecModel):
    sort_by_field: FieldName
    aggregation: Optional[Aggregation] = None
    direction: Optional[Direction] = None
    limit: Optional[StrictInt] = None
    field_name: Optional[FieldName] = None

    @field_validator("limit")
    @classmethod
    def _positive_limit(cls, limit):
        if limit is not None and limit < 1:
            raise PydanticCustomError("bad_sort", "limit must be a positive integer")
        return limit


class VizSpec(SpecModel):
    """Root of the model: fields, then filters, sorts and an optional chart type."""

    fields: Tuple[Field, ...]
    filters: Tuple[Filter, ...] = ()
    sorts: Tuple[Sort, ...] = ()
    chart_type: Optional[ChartType] = None

    @field_validator("fields")
    @classmethod
    def _fields_not_empty(cls, fields):
        if not fields:
            raise PydanticCustomError("missing_fields", "a spec needs at least one field")
        return fields


class ParseResult(BaseModel):
    """Outcome of parsing shorthand or decoding a full-spec document.

    `spec` is set iff none of the diagnostics is an error.
    """

    spec: Optional[VizSpec] = None
    diagnostics: List[Diagnostic] = []

    @property
    def errors(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if d.is_error]

    @property
    def warnings(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if not d.is_error]

    @property
    def ok(self) -> bool:
        return self.spec is not None


def validate(spec: VizSpec) -> List[Diagnostic]:
    """Check the rules that span several elements of a spec.

    Duplicate field names are errors; date aggregations on a continuous
    measure and sorts targeting an unknown field are warnings. Diagnostics
    carry position 1:1 since a model has no source text.
    """
    diagnostics = []
    seen = set()
    for field in spec.fields:
        if field.name in seen:
            diagnostics.append(Diagnostic.error(
                DiagnosticCode.DUP_FIELD, f'field "{field.name}" is listed more than once'))
        seen.add(field.name)
        if field.field_type is FieldType.CONTINUOUS_MEASURE and field.aggregation in DATE_AGGREGATIONS:
            diagnostics.append(Diagnostic.warning(
                DiagnosticCode.DATE_AGG_ON_MEASURE,
                f'date aggregation "{field.aggregation.value}" on measure "{field.name}"'))

    known = seen | {f.field_name for f in spec.filters}
    for sort in spec.sorts:
        if sort.field_name is not None and sort.field_name not in known:
            diagnostics.append(Diagnostic.warning(
                DiagnosticCode.SORT_UNKNOWN_FIELD,
                f'sort targets "{sort.field_name}" which is not a field of the spec'))
    return diagnostics


def errors_of(spec: VizSpec) -> List[Diagnostic]:
    return [d for d in validate(spec) if d.is_error]
