from fastapi import APIRouter, HTTPException, status
import logging

from app.schemas.campaign import TrialRecord
from app.schemas.polynomial import CheckRequest
from app.schemas.sequence import Sequence
from app.services.trials import AnalyzerInconsistency, check_input

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/check", response_model=TrialRecord)
def check_conjecture(request: CheckRequest):
	"""
	Проверка одного утверждения на одном входе.
	Вход вне класса гипотезы даёт outcome=not_applicable, а не ошибку.
	"""
	try:
		sequence = Sequence.of(request.f)
		return check_input(
			request.conjecture,
			request.n,
			sequence,
			r=request.r,
			alpha=request.alpha,
			beta=request.beta,
			relax=request.relax,
			sample_points=request.sample_points,
			weights=request.weights,
		)
	except AnalyzerInconsistency as e:
		logger.error(f"Analyzer inconsistency on {request.conjecture.value}: {e}", exc_info=True)
		raise HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=str(e))
	except ValueError as e:
		raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
