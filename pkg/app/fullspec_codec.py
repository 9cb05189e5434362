"""Conversion between VizSpec and the verbose full-spec JSON document."""

import json
import logging
from typing import Any, Dict, List

from pydantic import ValidationError

from models.diagnostic import Diagnostic, DiagnosticCode, DiagnosticError
from models.fullspec import Continuity, DataType, FieldAttrs, FullSpecDoc, Role
from models.vizspec import DOCUMENT_CONTEXT, FILTER_TYPES, Field, FieldType, ParseResult, VizSpec, errors_of

logger = logging.getLogger(__name__)

FullSpec = Dict[str, Any]

FIELD_ATTRS = {
    FieldType.CONTINUOUS_MEASURE: FieldAttrs(role=Role.MEASURE, type=Continuity.CONTINUOUS,
                                             data_type=DataType.NUMBER),
    FieldType.CONTINUOUS_DIMENSION: FieldAttrs(role=Role.DIMENSION, type=Continuity.CONTINUOUS,
                                               data_type=DataType.DATE),
    FieldType.DISCRETE_DIMENSION: FieldAttrs(role=Role.DIMENSION, type=Continuity.DISCRETE,
                                             data_type=DataType.STRING),
}

DOCUMENT_KEYS = frozenset(field.alias for field in FullSpecDoc.model_fields.values())

# pydantic error type -> registry code; custom validator errors carry their code in the type
_CODE_BY_ERROR_TYPE = {
    "missing": DiagnosticCode.MISSING_KEY,
    "union_tag_not_found": DiagnosticCode.MISSING_KEY,
    "enum": DiagnosticCode.BAD_ENUM,
    "literal_error": DiagnosticCode.BAD_ENUM,
    "union_tag_invalid": DiagnosticCode.BAD_ENUM,
    "bad_name": DiagnosticCode.BAD_NAME,
    "bad_filter": DiagnosticCode.BAD_FILTER,
    "bad_sort": DiagnosticCode.BAD_SORT,
    "bad_field_attrs": DiagnosticCode.BAD_FIELD_ATTRS,
    "missing_fields": DiagnosticCode.MISSING_FIELDS,
}


def infer_field_attrs(field_type: FieldType) -> FieldAttrs:
    """Map a field type code onto the document's role/type/dataType triple.

    `unspecified` falls back to a discrete string dimension; callers surface
    that as an UNSPECIFIED_FIELD_TYPE warning (see unspecified_field_warnings).
    """
    if field_type is FieldType.UNSPECIFIED:
        logger.info("field type unspecified; writing it as a discrete string dimension")
        return FIELD_ATTRS[FieldType.DISCRETE_DIMENSION]
    return FIELD_ATTRS[field_type]


def _field_document(field: Field) -> FullSpec:
    document: FullSpec = {"fieldName": field.name}
    if field.aggregation is not None:
        document["aggregation"] = field.aggregation.value
    if field.encoding is not None:
        document["encoding"] = field.encoding.value
    document.update(infer_field_attrs(field.field_type).model_dump(by_alias=True, mode="json"))
    return document


def to_full_spec(spec: VizSpec) -> FullSpec:
    """Build the full-spec document; optional parts are omitted, never null."""
    errors = errors_of(spec)
    if errors:
        raise DiagnosticError(errors)

    document: FullSpec = {"fields": [_field_document(field) for field in spec.fields]}
    if spec.filters:
        document["filters"] = [
            item.model_dump(by_alias=True, exclude_none=True, mode="json") for item in spec.filters
        ]
    if spec.sorts:
        document["sort"] = [
            sort.model_dump(by_alias=True, exclude_none=True, mode="json") for sort in spec.sorts
        ]
    if spec.chart_type is not None:
        document["chartType"] = spec.chart_type.value
    return document


def unspecified_field_warnings(spec: VizSpec) -> List[Diagnostic]:
    """Warnings for fields whose type cannot survive a trip through the document."""
    return [
        Diagnostic.warning(DiagnosticCode.UNSPECIFIED_FIELD_TYPE,
                           f'field "{field.name}" has no type and is written as a discrete dimension',
                           path=f"fields[{index}]")
        for index, field in enumerate(spec.fields)
        if field.field_type is FieldType.UNSPECIFIED
    ]


def error_path(loc) -> str:
    """Render a pydantic error location as a document path like `filters[0].start`."""
    path = ""
    previous = None
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        elif isinstance(previous, int) and part in FILTER_TYPES:
            pass  # discriminator tag, not a key of the document
        else:
            path += f".{part}" if path else str(part)
        previous = part
    return path or "$"


def _diagnostic_from_error(error) -> Diagnostic:
    code = _CODE_BY_ERROR_TYPE.get(error["type"], DiagnosticCode.BAD_TYPE)
    return Diagnostic.error(code, error["msg"], path=error_path(error["loc"]))


def from_full_spec(document: Any) -> ParseResult:
    """Decode a full-spec document into a VizSpec.

    The field type comes back from the (role, type) pair. Unknown top-level
    keys produce warnings; every other problem is an error naming its path.
    """
    if not isinstance(document, dict):
        return ParseResult(diagnostics=[Diagnostic.error(
            DiagnosticCode.BAD_TYPE, "full spec must be a JSON object", path="$")])
    try:
        parsed = FullSpecDoc.model_validate(document, context={DOCUMENT_CONTEXT: True})
    except ValidationError as exc:
        return ParseResult(diagnostics=[_diagnostic_from_error(error) for error in exc.errors()])

    diagnostics = [
        Diagnostic.warning(DiagnosticCode.UNKNOWN_KEY, f"unknown key '{key}' ignored", path=key)
        for key in document
        if key not in DOCUMENT_KEYS
    ]
    spec = parsed.to_spec()
    errors = errors_of(spec)
    if errors:
        return ParseResult(diagnostics=diagnostics + errors)
    logger.debug("decoded full spec with %d fields", len(spec.fields))
    return ParseResult(spec=spec, diagnostics=diagnostics)


def dumps(document: FullSpec, indent: int = 2) -> str:
    return json.dumps(document, indent=indent, ensure_ascii=False) + "\n"


def loads(text: str) -> ParseResult:
    """Decode full-spec JSON text; syntax errors keep the decoder's position."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        return ParseResult(diagnostics=[Diagnostic.error(
            DiagnosticCode.BAD_JSON, exc.msg, line=exc.lineno, column=exc.colno)])
    except ValueError as exc:
        # integers past the conversion limit
        return ParseResult(diagnostics=[Diagnostic.error(DiagnosticCode.BAD_JSON, str(exc), path="$")])
    return from_full_spec(document)
