from fastapi import APIRouter, HTTPException, status
import logging

from app.schemas.polynomial import ExpandRequest, ExpandResponse
from app.services.expand import analyze, expand_polynomial, render_expansion

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/expand", response_model=ExpandResponse)
def expand(request: ExpandRequest):
	"""
	Точные коэффициенты Q_n^{α,β}, P_n или P_n^r и три вердикта анализаторов.
	"""
	try:
		polynomial = expand_polynomial(request.mode, request.n, request.f, request.r, request.alpha, request.beta)
	except ValueError as e:
		raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
	return ExpandResponse(
		polynomial=polynomial,
		degree=polynomial.degree,
		verdicts=analyze(polynomial),
		text=render_expansion(polynomial),
	)
