from functools import lru_cache
from pathlib import Path

GRAMMAR_PATH = Path(__file__).resolve().parent.parent / "resources" / "grammar.bnf"


@lru_cache(maxsize=1)
def load_grammar() -> str:
    """Return the bundled CFG text exactly as shipped."""
    with open(GRAMMAR_PATH, encoding="utf-8", newline="") as handle:
        return handle.read()
