from fastapi import APIRouter, HTTPException, status
import logging

from app.schemas.polynomial import GenerateRequest, GenerateResponse
from app.services.sampling import GeneratorExhausted, generate_from_spec

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/generate", response_model=GenerateResponse)
def generate(request: GenerateRequest):
	"""count последовательностей по GeneratorSpec; i-я берётся из потока (seed, i)."""
	try:
		return GenerateResponse(sequences=generate_from_spec(request.spec, request.count))
	except GeneratorExhausted as e:
		logger.warning(f"Generator {request.spec.kind.value} exhausted: {e}")
		raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
	except ValueError as e:
		raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
