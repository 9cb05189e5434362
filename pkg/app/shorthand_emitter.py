import logging
from functools import singledispatch
from typing import List

from models.diagnostic import DiagnosticError
from models.vizspec import (
    CategoricalFilter, DateRangeFilter, Field, FieldType, NumericRangeFilter, RelativeDateFilter, Sort, VizSpec,
    errors_of,
)
from util.text import format_number, quote

logger = logging.getLogger(__name__)


def emit(spec: VizSpec) -> str:
    """Serialize a spec to canonical shorthand.

    Sections are separated by one blank line, items keep their order and the
    text ends with exactly one newline. parse(emit(spec)) == spec.
    """
    errors = errors_of(spec)
    if errors:
        raise DiagnosticError(errors)

    lines = ["fields:"]
    lines.extend(field_line(field) for field in spec.fields)
    if spec.filters:
        lines.extend(["", "filters:"])
        lines.extend(filter_line(f) for f in spec.filters)
    if spec.sorts:
        lines.extend(["", "sort:"])
        lines.extend(sort_line(sort) for sort in spec.sorts)
    if spec.chart_type is not None:
        lines.extend(["", "chart:", spec.chart_type.value])
    logger.debug("emitted %d shorthand lines", len(lines))
    return "\n".join(lines) + "\n"


def _join(parts: List[str]) -> str:
    return " ".join(part for part in parts if part)


def field_line(field: Field) -> str:
    return _join([
        "" if field.field_type is FieldType.UNSPECIFIED else field.field_type.value,
        quote(field.name),
        field.aggregation.value if field.aggregation else "",
        field.encoding.value if field.encoding else "",
    ])


@singledispatch
def filter_line(item) -> str:
    raise TypeError(f"not a filter: {type(item).__name__}")


@filter_line.register
def _(item: CategoricalFilter) -> str:
    return _join(["cat", quote(item.field_name), "ex" if item.exclude else "", "values"]
                 + [quote(value) for value in item.values])


@filter_line.register
def _(item: RelativeDateFilter) -> str:
    # duration before units, as in the worked example
    return _join(["rd", quote(item.field_name), str(item.duration), item.units.value])


@filter_line.register
def _(item: DateRangeFilter) -> str:
    parts = ["dr", quote(item.field_name)]
    if item.start is not None:
        parts += ["start", item.start]
    if item.end is not None:
        parts += ["end", item.end]
    return _join(parts)


@filter_line.register
def _(item: NumericRangeFilter) -> str:
    parts = ["nr", quote(item.field_name), item.aggregation.value if item.aggregation else ""]
    if item.start is not None:
        parts += ["start", format_number(item.start)]
    if item.end is not None:
        parts += ["end", format_number(item.end)]
    return _join(parts)


def sort_line(sort: Sort) -> str:
    return _join([
        quote(sort.sort_by_field),
        sort.aggregation.value if sort.aggregation else "",
        sort.direction.value if sort.direction else "",
        str(sort.limit) if sort.limit is not None else "",
        quote(sort.field_name) if sort.field_name is not None else "",
    ])
