from fastapi import APIRouter
from pydantic import BaseModel

from models.stats import TokenStats
from token_stats import compare


class StatsRequest(BaseModel):
    shorthand: str
    full: str


router = APIRouter(
    prefix="/stats",
    tags=["stats"],
)


@router.post("", response_model=TokenStats, response_model_by_alias=True)
async def token_stats(request: StatsRequest):
    """Compare token and character counts of a shorthand text and its full spec"""
    return compare(request.shorthand, request.full)
