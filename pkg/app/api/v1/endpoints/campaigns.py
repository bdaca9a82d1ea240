from fastapi import APIRouter, HTTPException, status
from pathlib import Path
import aiofiles
import asyncio
import logging

from app.core.config import settings
from app.schemas.campaign import CampaignConfig
from app.schemas.polynomial import CampaignResponse
from app.services.campaign import run_campaign

logger = logging.getLogger(__name__)

router = APIRouter()


def reports_dir() -> Path:
	path = Path(settings.REPORTS_LOCAL_PATH)
	if not path.is_absolute():
		path = Path(__file__).parents[4] / path
	path.mkdir(parents=True, exist_ok=True)
	return path


@router.post("", response_model=CampaignResponse)
async def create_campaign(config: CampaignConfig):
	"""
	Запуск кампании в executor и сохранение JSON-отчёта в REPORTS_LOCAL_PATH.
	Имя файла: campaign_<seed>_<trials>.json.
	"""
	loop = asyncio.get_running_loop()
	try:
		report = await loop.run_in_executor(None, run_campaign, config)
	except ValueError as e:
		raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))

	file_path = reports_dir() / f"campaign_{config.seed}_{config.trials}.json"
	try:
		async with aiofiles.open(file_path, "w", encoding="utf-8") as out_file:
			await out_file.write(report.model_dump_json(indent=2))
	except Exception as e:
		logger.error(f"Could not save campaign report to {file_path}: {e}", exc_info=True)
		raise HTTPException(
			status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
			detail=f"Could not save report: {str(e)}"
		)
	logger.info(f"Campaign report saved to {file_path} (exit code {report.exit_code})")
	return CampaignResponse(report=report, report_path=str(file_path))
