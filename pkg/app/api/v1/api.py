from fastapi import APIRouter
from app.api.v1.endpoints import polynomials, conjectures, sequences, regression, campaigns

api_router = APIRouter()
api_router.include_router(polynomials.router, prefix="/polynomials", tags=["polynomials"])
api_router.include_router(conjectures.router, prefix="/conjectures", tags=["conjectures"])
api_router.include_router(sequences.router, prefix="/sequences", tags=["sequences"])
api_router.include_router(regression.router, prefix="/regression", tags=["regression"])
api_router.include_router(campaigns.router, prefix="/campaigns", tags=["campaigns"])
