from typing import Optional

from pydantic import BaseModel, ConfigDict, Field
from pydantic.alias_generators import to_camel


class TokenStats(BaseModel):
    """Token and character counts of a shorthand text against its full spec.

    Ratios are full / shorthand and stay None when the shorthand count is 0.
    """

    model_config = ConfigDict(frozen=True, alias_generator=to_camel, populate_by_name=True)

    shorthand_tokens: int = Field(ge=0)
    full_tokens: int = Field(ge=0)
    shorthand_chars: int = Field(ge=0)
    full_chars: int = Field(ge=0)
    token_ratio: Optional[float] = Field(None, ge=0)
    char_ratio: Optional[float] = Field(None, ge=0)
