from fastapi import APIRouter, Depends
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, ConfigDict
from pydantic.alias_generators import to_camel

from config import Settings, get_settings
from models.prompt import PromptBundle
from util.grammar import load_grammar


class PromptRequest(BaseModel):
    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True)

    schema_extract: str
    user_query: str


router = APIRouter(
    prefix="/grammar",
    tags=["grammar"],
)


@router.get("", response_class=PlainTextResponse)
async def get_grammar():
    """Return the bundled CFG verbatim"""
    return load_grammar()


@router.post("/prompt", response_class=PlainTextResponse)
async def build_prompt(request: PromptRequest, settings: Settings = Depends(get_settings)):
    """Assemble grammar, dataset fields and user request into one prompt"""
    bundle = PromptBundle(
        grammar_text=load_grammar(),
        schema_extract=request.schema_extract,
        user_query=request.user_query,
    )
    return bundle.render(settings.grammar_label, settings.schema_label, settings.request_label)
