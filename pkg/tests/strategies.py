"""Hypothesis strategies producing valid VizSpecs."""

from datetime import date

from hypothesis import strategies as st

from models.vizspec import (
    Aggregation, CategoricalFilter, ChartType, DateRangeFilter, Direction, Encoding, Field, FieldType,
    NumericRangeFilter, RelativeDateFilter, Sort, Units, VizSpec,
)

# quotes and backslashes included so escaping gets exercised
names = st.text(
    alphabet=st.characters(exclude_categories=("Cs",), exclude_characters="\r\n"),
    min_size=1,
    max_size=12,
)
values = st.text(
    alphabet=st.characters(exclude_categories=("Cs",), exclude_characters="\r\n"),
    max_size=8,
)
optional_aggregation = st.none() | st.sampled_from(Aggregation)

numbers = st.integers(min_value=-10**9, max_value=10**9) | st.floats(allow_nan=False, allow_infinity=False)


@st.composite
def iso_dates(draw) -> str:
    day = draw(st.dates(min_value=date(1000, 1, 1), max_value=date(9999, 12, 31)))
    if not draw(st.booleans()):
        return day.isoformat()
    moment = draw(st.times()).strftime("%H:%M:%S")
    offset = draw(st.sampled_from(["", "Z", "+00:00", "+05:30", "-08:00", "+14:00"]))
    return f"{day.isoformat()}T{moment}{offset}"


# models are built by field name; their signatures list the camelCase aliases


@st.composite
def fields(draw) -> Field:
    return Field(
        name=draw(names),
        field_type=draw(st.sampled_from(FieldType)),
        aggregation=draw(optional_aggregation),
        encoding=draw(st.none() | st.sampled_from(Encoding)),
    )


@st.composite
def categorical_filters(draw) -> CategoricalFilter:
    return CategoricalFilter(
        field_name=draw(names),
        exclude=draw(st.booleans()),
        values=tuple(draw(st.lists(values, min_size=1, max_size=3))),
    )


@st.composite
def relative_date_filters(draw) -> RelativeDateFilter:
    return RelativeDateFilter(
        field_name=draw(names),
        duration=draw(st.integers(min_value=1, max_value=10**6)),
        units=draw(st.sampled_from(Units)),
    )


@st.composite
def date_range_filters(draw) -> DateRangeFilter:
    bounds = draw(st.sampled_from(["start", "end", "both"]))
    return DateRangeFilter(
        field_name=draw(names),
        start=draw(iso_dates()) if bounds != "end" else None,
        end=draw(iso_dates()) if bounds != "start" else None,
    )


@st.composite
def numeric_range_filters(draw) -> NumericRangeFilter:
    low, high = sorted(draw(st.lists(numbers, min_size=2, max_size=2)))
    bounds = draw(st.sampled_from(["start", "end", "both"]))
    return NumericRangeFilter(
        field_name=draw(names),
        aggregation=draw(optional_aggregation),
        start=low if bounds != "end" else None,
        end=high if bounds != "start" else None,
    )


filters = st.one_of(categorical_filters(), relative_date_filters(), date_range_filters(), numeric_range_filters())


@st.composite
def sorts(draw) -> Sort:
    return Sort(
        sort_by_field=draw(names),
        aggregation=draw(optional_aggregation),
        direction=draw(st.none() | st.sampled_from(Direction)),
        limit=draw(st.none() | st.integers(min_value=1, max_value=1000)),
        field_name=draw(st.none() | names),
    )


@st.composite
def specs(draw) -> VizSpec:
    return VizSpec(
        fields=tuple(draw(st.lists(fields(), min_size=1, max_size=4, unique_by=lambda field: field.name))),
        filters=tuple(draw(st.lists(filters, max_size=4))),
        sorts=tuple(draw(st.lists(sorts(), max_size=3))),
        chart_type=draw(st.none() | st.sampled_from(ChartType)),
    )


viz_specs = specs()
