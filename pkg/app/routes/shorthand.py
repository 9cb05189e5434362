from typing import Any, Dict, List

from fastapi import APIRouter, Body, HTTPException, status
from pydantic import BaseModel, ConfigDict
from pydantic.alias_generators import to_camel

import fullspec_codec
from models.diagnostic import Diagnostic
from shorthand_emitter import emit
from shorthand_parser import parse


# Pydantic models for request/response
class ShorthandRequest(BaseModel):
    text: str


class ParseResponse(BaseModel):
    valid: bool
    diagnostics: List[Diagnostic]


class ShorthandResponse(BaseModel):
    shorthand: str
    diagnostics: List[Diagnostic]


class RoundtripResponse(BaseModel):
    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True)

    fixed_point: bool
    canonical: str


router = APIRouter(
    prefix="/shorthand",
    tags=["shorthand"],
    responses={422: {"description": "Diagnostics with errors"}},
)


def _reject(diagnostics: List[Diagnostic]) -> HTTPException:
    return HTTPException(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        detail=[d.model_dump(mode="json") for d in diagnostics],
    )


@router.post("/parse", response_model=ParseResponse)
async def parse_shorthand(request: ShorthandRequest):
    """Parse shorthand and return its diagnostics"""
    result = parse(request.text)
    return {"valid": result.ok, "diagnostics": result.diagnostics}


@router.post("/to-full-spec")
async def shorthand_to_full_spec(request: ShorthandRequest) -> Dict[str, Any]:
    """Convert shorthand to the full-spec document"""
    result = parse(request.text)
    if not result.ok:
        raise _reject(result.diagnostics)
    return fullspec_codec.to_full_spec(result.spec)


@router.post("/from-full-spec", response_model=ShorthandResponse)
async def full_spec_to_shorthand(document: Any = Body(...)):
    """Convert a full-spec document to canonical shorthand"""
    result = fullspec_codec.from_full_spec(document)
    if not result.ok:
        raise _reject(result.diagnostics)
    return {"shorthand": emit(result.spec), "diagnostics": result.diagnostics}


@router.post("/roundtrip", response_model=RoundtripResponse, response_model_by_alias=True)
async def roundtrip(request: ShorthandRequest):
    """Check that the canonical form of the shorthand parses back to the same spec"""
    first = parse(request.text)
    if not first.ok:
        raise _reject(first.diagnostics)
    canonical = emit(first.spec)
    second = parse(canonical)
    fixed_point = second.spec == first.spec and emit(second.spec) == canonical
    return RoundtripResponse(fixed_point=fixed_point, canonical=canonical)
