import logging
from datetime import datetime, timezone

import uvicorn
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from config import configure_logging, get_settings
from routes import grammar, shorthand, stats

settings = get_settings()
configure_logging(settings.log_level)
logger = logging.getLogger(__name__)

# Create FastAPI app
app = FastAPI(title=settings.app_name,
              description=settings.description,
              version=settings.version,
              debug=settings.debug)

app.add_middleware(
    CORSMiddleware,
    allow_origins=[f"http://{host}" for host in settings.allowed_hosts],
    allow_methods=["GET", "POST"],
    allow_headers=["*"],
)

# Include routers
app.include_router(shorthand.router)
app.include_router(stats.router)
app.include_router(grammar.router)


# FastAPI startup event handler
@app.on_event("startup")
async def on_startup():
    logger.info("%s %s ready on %s:%d", settings.app_name, settings.version, settings.host, settings.port)


# Root endpoint
@app.get("/", tags=["status"])
async def root():
    """Return a simple status message."""
    return {
        "message": f"Welcome to the {settings.app_name}",
        "status": "operational",
        "time": datetime.now(timezone.utc),
    }


# Info endpoint
@app.get("/info", tags=["status"])
async def info():
    """Return application information."""
    return {
        "app_name": settings.app_name,
        "version": settings.version,
        "description": settings.description,
        "endpoints": {
            "shorthand": "/shorthand",
            "stats": "/stats",
            "grammar": "/grammar",
        },
    }


# Application entry point
if __name__ == "__main__":
    uvicorn.run(
        "main:app",
        host=settings.host,
        port=settings.port,
        reload=settings.debug,
    )
