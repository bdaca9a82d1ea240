from pydantic import BaseModel, Field, model_validator
from typing import List, Optional
from enum import Enum

from app.schemas.campaign import CampaignReport, Conjecture, RelaxMode
from app.schemas.common import PolynomialField, Rational
from app.schemas.generator import GeneratorSpec
from app.schemas.sequence import Sequence
from app.schemas.verdict import StabilityVerdict


class ExpandMode(str, Enum):
	Q = "Q"
	P = "P"
	Pr = "Pr"


class ExpandRequest(BaseModel):
	mode: ExpandMode
	n: int = Field(ge=0)
	r: Optional[int] = Field(default=None, ge=2)
	alpha: Optional[Rational] = None
	beta: Optional[Rational] = None
	f: List[Rational]

	@model_validator(mode="after")
	def check_params(self) -> "ExpandRequest":
		if self.mode == ExpandMode.Q and (self.alpha is None or self.beta is None):
			raise ValueError("Mode Q needs alpha and beta")
		if self.mode == ExpandMode.Pr and self.r is None:
			raise ValueError("Mode Pr needs r")
		return self


class ExpandResponse(BaseModel):
	polynomial: PolynomialField
	degree: Optional[int] = None
	verdicts: List[StabilityVerdict] = []
	text: str

	class Config:
		arbitrary_types_allowed = True


class CheckRequest(BaseModel):
	"""Один вход для одного утверждения (L2 не поддерживается: у неё нет последовательности)."""
	conjecture: Conjecture
	n: int = Field(ge=0)
	r: Optional[int] = Field(default=None, ge=2)
	alpha: Optional[Rational] = None
	beta: Optional[Rational] = None
	relax: RelaxMode = RelaxMode.none
	f: List[Rational]
	weights: Optional[List[Rational]] = None
	sample_points: Optional[List[Rational]] = None


class GenerateRequest(BaseModel):
	spec: GeneratorSpec
	count: int = Field(default=1, ge=1, le=1000)


class GenerateResponse(BaseModel):
	sequences: List[Sequence]


class CampaignResponse(BaseModel):
	report: CampaignReport
	report_path: str
