from enum import Enum
from typing import Optional, Tuple

from pydantic import field_validator, model_validator
from pydantic_core import PydanticCustomError

from models.vizspec import (
    Aggregation, ChartType, Encoding, Field, FieldName, FieldType, Filter, Sort, SpecModel, VizSpec,
)


class Role(str, Enum):
    DIMENSION = "dimension"
    MEASURE = "measure"


class Continuity(str, Enum):
    CONTINUOUS = "continuous"
    DISCRETE = "discrete"


class DataType(str, Enum):
    DATE = "date"
    NUMBER = "number"
    STRING = "string"


class FieldAttrs(SpecModel):
    """The role/type/dataType triple a full-spec field carries."""

    role: Role
    type: Continuity
    data_type: DataType


# (role, type) -> field type code; measure+discrete has no code and is rejected
FIELD_TYPE_BY_ATTRS = {
    (Role.MEASURE, Continuity.CONTINUOUS): FieldType.CONTINUOUS_MEASURE,
    (Role.DIMENSION, Continuity.CONTINUOUS): FieldType.CONTINUOUS_DIMENSION,
    (Role.DIMENSION, Continuity.DISCRETE): FieldType.DISCRETE_DIMENSION,
}


class FieldDoc(SpecModel):
    """A field object of the full-spec document."""

    field_name: FieldName
    aggregation: Optional[Aggregation] = None
    encoding: Optional[Encoding] = None
    role: Role
    type: Continuity
    data_type: DataType

    @model_validator(mode="after")
    def _attrs_consistent(self):
        if (self.role, self.type) not in FIELD_TYPE_BY_ATTRS:
            raise PydanticCustomError(
                "bad_field_attrs",
                "role '{role}' cannot be combined with type '{type}'",
                {"role": self.role.value, "type": self.type.value},
            )
        return self

    def to_field(self) -> Field:
        return Field(
            name=self.field_name,
            field_type=FIELD_TYPE_BY_ATTRS[(self.role, self.type)],
            aggregation=self.aggregation,
            encoding=self.encoding,
        )


class FullSpecDoc(SpecModel):
    """Top level of the full-spec document; unknown keys are ignored here and reported by the codec."""

    fields: Tuple[FieldDoc, ...]
    filters: Tuple[Filter, ...] = ()
    sort: Tuple[Sort, ...] = ()
    chart_type: Optional[ChartType] = None

    @field_validator("fields")
    @classmethod
    def _fields_not_empty(cls, fields):
        if not fields:
            raise PydanticCustomError("missing_fields", "the document lists no fields")
        return fields

    def to_spec(self) -> VizSpec:
        return VizSpec(
            fields=tuple(doc.to_field() for doc in self.fields),
            filters=self.filters,
            sorts=self.sort,
            chart_type=self.chart_type,
        )
