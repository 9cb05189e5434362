from pydantic import BaseModel, ConfigDict, Field
from pydantic.alias_generators import to_camel


class PromptBundle(BaseModel):
    """Grammar, dataset field extract and user request assembled into one prompt."""

    model_config = ConfigDict(frozen=True, alias_generator=to_camel, populate_by_name=True)

    grammar_text: str = Field(min_length=1)
    schema_extract: str
    user_query: str

    def render(self, grammar_label: str = "GRAMMAR:", schema_label: str = "DATASET FIELDS:",
               request_label: str = "REQUEST:") -> str:
        sections = (
            (grammar_label, self.grammar_text),
            (schema_label, self.schema_extract),
            (request_label, self.user_query),
        )
        lines = []
        for label, body in sections:
            lines.append(label)
            lines.append(body.rstrip("\n"))
        return "\n".join(lines) + "\n"
