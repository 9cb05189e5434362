import logging
import os
import sys
from functools import lru_cache
from typing import List

from dotenv import load_dotenv
from pydantic import BaseModel

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


# Configuration settings using Pydantic
class Settings(BaseModel):
    app_name: str = "Viz Shorthand API"
    description: str = "Parse, emit and convert visualization shorthand"
    version: str = "0.1.0"
    debug: bool = False
    host: str = "0.0.0.0"
    port: int = 8000
    allowed_hosts: List[str] = ["127.0.0.1", "localhost"]
    log_level: str = "WARNING"
    json_indent: int = 2
    grammar_label: str = "GRAMMAR:"
    schema_label: str = "DATASET FIELDS:"
    request_label: str = "REQUEST:"

    @classmethod
    def from_env(cls) -> "Settings":
        """Settings for the HTTP server, read from the environment and a .env file."""
        load_dotenv()
        defaults = cls()
        hosts = os.getenv("ALLOWED_HOSTS")
        return cls(
            debug=os.getenv("DEBUG", str(defaults.debug)).lower() in ("1", "true", "yes"),
            host=os.getenv("HOST", defaults.host),
            port=int(os.getenv("PORT", defaults.port)),
            allowed_hosts=[h.strip() for h in hosts.split(",")] if hosts else defaults.allowed_hosts,
            log_level=os.getenv("LOG_LEVEL", defaults.log_level),
        )


@lru_cache
def get_settings() -> Settings:
    """Server settings, loaded once per process."""
    return Settings.from_env()


def configure_logging(level: str = "WARNING") -> None:
    """Send log records to stderr, one line each."""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(level.upper())
