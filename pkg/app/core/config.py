from pydantic_settings import BaseSettings
from fractions import Fraction
from typing import List, Union
import json

class Settings(BaseSettings):
	PROJECT_NAME: str = "PF Determinant Lab"
	API_V1_STR: str = "/api/v1"

	# CORS
	BACKEND_CORS_ORIGINS: Union[str, List[str]] = ["http://localhost:3000", "http://localhost:8000"]

	# Logging
	LOG_LEVEL: str = "INFO"

	# Campaign defaults
	CAMPAIGN_TRIALS: int = 500
	CAMPAIGN_N_MIN: int = 3
	CAMPAIGN_N_MAX: int = 10
	CAMPAIGN_R_MIN: int = 2
	CAMPAIGN_R_MAX: int = 4
	CAMPAIGN_SEED: int = 20240501
	CAMPAIGN_WORKERS: int = 1  # 1 = последовательный запуск без пула процессов

	# Sampling
	DENOMINATOR_BOUND: int = 16  # Знаменатели случайных δ и корней
	DELTA_MIN: str = "1/8"  # Нижняя граница δ, строка "p/q"
	ALPHA_BETA_MAX: str = "5"  # α, β берутся из (0, ALPHA_BETA_MAX]
	ALPHA_BETA_DENOMINATOR: int = 64
	ROOT_LOG2_SPAN: int = 3  # Корни из [2^-span, 2^span], логарифмически равномерно
	MAX_REJECTIONS: int = 50  # Лимит повторных попыток генератора на одно испытание
	SAMPLE_POINTS: int = 20  # Число точек x >= 0 для проверки Q_n^{α,β}(x) >= 0

	# Reports
	REPORTS_LOCAL_PATH: str = "reports"  # Куда API сохраняет отчёты кампаний

	# mpmath
	HIGH_PRECISION_BITS: int = 160  # Не меньше 128

	# Debug
	DEBUG: bool = True  # По умолчанию True для разработки

	class Config:
		case_sensitive = True
		env_file = ".env"

	def __init__(self, **data):
		super().__init__(**data)
		# Парсинг BACKEND_CORS_ORIGINS из строки
		if isinstance(self.BACKEND_CORS_ORIGINS, str):
			try:
				self.BACKEND_CORS_ORIGINS = json.loads(self.BACKEND_CORS_ORIGINS)
			except json.JSONDecodeError:
				# Если не JSON, парсим как строку через запятую
				self.BACKEND_CORS_ORIGINS = [origin.strip() for origin in self.BACKEND_CORS_ORIGINS.split(",") if origin.strip()]
		if self.HIGH_PRECISION_BITS < 128:
			raise ValueError(f"HIGH_PRECISION_BITS must be at least 128, got {self.HIGH_PRECISION_BITS}")

	@property
	def delta_min(self) -> Fraction:
		return Fraction(self.DELTA_MIN)

	@property
	def alpha_beta_max(self) -> Fraction:
		return Fraction(self.ALPHA_BETA_MAX)

settings = Settings()
