import itertools

import pytest
from pydantic import ValidationError

from models.diagnostic import Diagnostic, DiagnosticCode, DiagnosticError, Severity
from models.vizspec import (
    DATE_AGGREGATIONS, Aggregation, CategoricalFilter, ChartType, DateRangeFilter, Direction, Encoding, Field,
    FieldType, MAX_INT_DIGITS, NumericRangeFilter, RelativeDateFilter, Sort, Units, VizSpec, errors_of, is_iso_date,
    validate,
)


def sales_spec() -> VizSpec:
    return VizSpec(
        fields=(
            Field(name="Order Date", field_type=FieldType.CONTINUOUS_DIMENSION,
                  aggregation=Aggregation.MONTH, encoding=Encoding.X),
            Field(name="Sales", field_type=FieldType.CONTINUOUS_MEASURE, aggregation=Aggregation.SUM),
        ),
        filters=(
            CategoricalFilter(field_name="Product Name", values=("Product A", "Product B")),
            CategoricalFilter(field_name="Region", values=("South", "West")),
            RelativeDateFilter(field_name="Order Date", duration=2, units=Units.YEARS),
            NumericRangeFilter(field_name="Sales", aggregation=Aggregation.SUM, start=1000, end=10000),
        ),
        sorts=(
            Sort(sort_by_field="Sales", aggregation=Aggregation.SUM, direction=Direction.DESC,
                 limit=5, field_name="Region"),
        ),
    )


class TestValidate:
    def test_sales_spec_is_clean(self):
        assert validate(sales_spec()) == []

    def test_duplicate_names(self):
        spec = VizSpec(fields=(Field(name="Sales"), Field(name="Sales", field_type=FieldType.CONTINUOUS_MEASURE)))
        diagnostics = validate(spec)
        assert [d.code for d in diagnostics] == [DiagnosticCode.DUP_FIELD]
        assert diagnostics[0].severity is Severity.ERROR
        assert (diagnostics[0].line, diagnostics[0].column) == (1, 1)

    def test_duplicate_check_is_case_sensitive(self):
        spec = VizSpec(fields=(Field(name="Sales"), Field(name="sales")))
        assert validate(spec) == []

    def test_date_aggregation_on_measure(self):
        spec = VizSpec(fields=(Field(name="Revenue", field_type=FieldType.CONTINUOUS_MEASURE,
                                     aggregation=Aggregation.MONTH),))
        diagnostics = validate(spec)
        assert [d.code for d in diagnostics] == [DiagnosticCode.DATE_AGG_ON_MEASURE]
        assert diagnostics[0].severity is Severity.WARNING

    @pytest.mark.parametrize("field_type,aggregation", itertools.product(FieldType, Aggregation))
    def test_date_aggregation_table(self, field_type, aggregation):
        spec = VizSpec(fields=(Field(name="F", field_type=field_type, aggregation=aggregation),))
        expected = field_type is FieldType.CONTINUOUS_MEASURE and aggregation in DATE_AGGREGATIONS
        assert bool(validate(spec)) == expected

    def test_sort_on_unknown_field(self):
        spec = VizSpec(fields=(Field(name="Sales"),), sorts=(Sort(sort_by_field="Sales", field_name="Segment"),))
        diagnostics = validate(spec)
        assert [d.code for d in diagnostics] == [DiagnosticCode.SORT_UNKNOWN_FIELD]
        assert errors_of(spec) == []

    def test_sort_target_known_from_filters(self):
        spec = VizSpec(
            fields=(Field(name="Sales"),),
            filters=(CategoricalFilter(field_name="Region", values=("West",)),),
            sorts=(Sort(sort_by_field="Sales", field_name="Region"),),
        )
        assert validate(spec) == []

    def test_shared_encoding_channel_is_allowed(self):
        spec = VizSpec(fields=(Field(name="A", encoding=Encoding.X), Field(name="B", encoding=Encoding.X)))
        assert validate(spec) == []

    def test_pure(self):
        spec = sales_spec()
        copy = spec.model_copy(deep=True)
        assert validate(spec) == validate(spec)
        assert spec == copy


class TestInvariants:
    def test_fields_required(self):
        with pytest.raises(ValidationError) as exc:
            VizSpec(fields=())
        assert exc.value.errors()[0]["type"] == "missing_fields"

    @pytest.mark.parametrize("name", ["", "two\nlines", "cr\r"])
    def test_bad_names(self, name):
        with pytest.raises(ValidationError) as exc:
            Field(name=name)
        assert exc.value.errors()[0]["type"] == "bad_name"

    def test_quotes_in_names_are_allowed(self):
        assert Field(name='say "hi"').name == 'say "hi"'

    def test_categorical_needs_values(self):
        with pytest.raises(ValidationError) as exc:
            CategoricalFilter(field_name="Region", values=())
        assert exc.value.errors()[0]["type"] == "bad_filter"

    @pytest.mark.parametrize("duration", [0, -1])
    def test_duration_positive(self, duration):
        with pytest.raises(ValidationError):
            RelativeDateFilter(field_name="Order Date", duration=duration, units=Units.DAYS)

    def test_duration_integer_only(self):
        with pytest.raises(ValidationError):
            RelativeDateFilter(field_name="Order Date", duration=2.5, units=Units.DAYS)

    def test_date_range_needs_a_bound(self):
        with pytest.raises(ValidationError) as exc:
            DateRangeFilter(field_name="Order Date")
        assert exc.value.errors()[0]["type"] == "bad_filter"

    def test_date_range_checks_calendar(self):
        with pytest.raises(ValidationError):
            DateRangeFilter(field_name="Order Date", start="2023-02-30")

    def test_numeric_range_needs_a_bound(self):
        with pytest.raises(ValidationError):
            NumericRangeFilter(field_name="Sales")

    def test_numeric_range_order(self):
        with pytest.raises(ValidationError):
            NumericRangeFilter(field_name="Sales", start=10, end=1)
        assert NumericRangeFilter(field_name="Sales", start=5, end=5).start == 5

    def test_numeric_range_rejects_infinity(self):
        with pytest.raises(ValidationError):
            NumericRangeFilter(field_name="Sales", start=float("inf"))

    def test_numeric_range_integer_digits_are_bounded(self):
        with pytest.raises(ValidationError) as exc:
            NumericRangeFilter(field_name="Sales", start=10 ** MAX_INT_DIGITS)
        assert exc.value.errors()[0]["type"] == "bad_filter"
        assert NumericRangeFilter(field_name="Sales", end=-(10 ** MAX_INT_DIGITS - 1)).end < 0

    def test_number_kind_is_kept(self):
        item = NumericRangeFilter(field_name="Sales", start=1000, end=20000.0)
        assert type(item.start) is int
        assert type(item.end) is float

    def test_limit_positive(self):
        with pytest.raises(ValidationError) as exc:
            Sort(sort_by_field="Sales", limit=0)
        assert exc.value.errors()[0]["type"] == "bad_sort"

    def test_frozen(self):
        field = Field(name="Sales")
        with pytest.raises(ValidationError):
            field.name = "Profit"

    def test_vocabularies(self):
        assert len(Aggregation) == 15
        assert len(Encoding) == 6
        assert len(ChartType) == 13
        assert Aggregation.COUNT_DISTINCT == "countDistinct"
        assert ChartType.STACKED_BAR == "stackedbar"


@pytest.mark.parametrize("text,expected", [
    ("2023-01-01", True),
    ("2024-02-29", True),
    ("2023-02-29", False),
    ("2023-13-01", False),
    ("2023-01-01T10:30:00", True),
    ("2023-01-01T10:30:00Z", True),
    ("2023-01-01T10:30:00+05:30", True),
    ("2023-01-01T24:00:00", False),
    ("2023-01-01T10:30:00+24:00", False),
    ("2023-1-1", False),
    ("٢٠٢٣-01-01", False),
])
def test_is_iso_date(text, expected):
    assert is_iso_date(text) is expected


class TestDiagnostic:
    def test_format(self):
        diagnostic = Diagnostic.error(DiagnosticCode.BAD_FILTER, "bad unit", line=5, column=17)
        assert diagnostic.format() == "5:17: error BAD_FILTER: bad unit"

    def test_format_with_path(self):
        diagnostic = Diagnostic.warning(DiagnosticCode.UNKNOWN_KEY, "ignored", path="extra")
        assert diagnostic.format() == "1:1: warning UNKNOWN_KEY: extra: ignored"

    def test_positions_are_one_based(self):
        with pytest.raises(ValidationError):
            Diagnostic.error(DiagnosticCode.BAD_CHAR, "x", line=0)

    def test_error_names_first_code(self):
        error = DiagnosticError([Diagnostic.error(DiagnosticCode.DUP_FIELD, "dup")])
        assert isinstance(error, ValueError)
        assert "DUP_FIELD" in str(error)
