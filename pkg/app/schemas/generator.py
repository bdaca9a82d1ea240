from pydantic import BaseModel, Field, model_validator
from typing import List, Optional
from fractions import Fraction
from enum import Enum

from app.core.config import settings
from app.schemas.common import Rational


class GeneratorKind(str, Enum):
	pf2 = "pf2"
	pf_r_cosbound = "pf_r_cosbound"
	pf_r_sector = "pf_r_sector"
	pf_inf_roots = "pf_inf_roots"
	q3 = "q3"
	geometric = "geometric"
	ones = "ones"
	reciprocal_pochhammer = "reciprocal_pochhammer"


PF_R_KINDS = (GeneratorKind.pf_r_cosbound, GeneratorKind.pf_r_sector)


class GeneratorSpec(BaseModel):
	"""
	Параметры случайного генератора последовательностей.

	Поле kind сериализуется как "class". Параметры q и c нужны только
	пресетам geometric и reciprocal_pochhammer.
	"""
	kind: GeneratorKind = Field(alias="class")
	n: int = Field(ge=0)
	r: Optional[int] = None
	seed: int = Field(default=0, ge=0, lt=1 << 64)
	delta_min: Rational = Field(default_factory=lambda: settings.delta_min)
	denominator_bound: int = Field(default_factory=lambda: settings.DENOMINATOR_BOUND, ge=1)
	strict: bool = True
	q: Optional[Rational] = None
	c: Optional[Rational] = None

	class Config:
		populate_by_name = True

	@model_validator(mode="after")
	def check_params(self) -> "GeneratorSpec":
		if not Fraction(0) < self.delta_min < 1:
			raise ValueError(f"delta_min must lie in (0, 1), got {self.delta_min}")
		if self.kind in PF_R_KINDS:
			if self.r is None or self.r < 2:
				raise ValueError(f"Generator {self.kind.value} needs r >= 2, got {self.r}")
		if self.kind == GeneratorKind.q3 and self.n < 1:
			raise ValueError("Generator q3 needs n >= 1")
		if self.q is not None and self.q <= 0:
			raise ValueError(f"q must be positive, got {self.q}")
		if self.c is not None and self.c <= 0:
			raise ValueError(f"c must be positive, got {self.c}")
		return self


class MinorWitness(BaseModel):
	"""Отрицательный минор: индексы строк и столбцов (с 1, как в матрице) и значение."""
	rows: List[int]
	cols: List[int]
	value: Rational


class MinorCheckResult(BaseModel):
	order_checked: int
	ok: bool
	witness: Optional[MinorWitness] = None
	minors_checked: int = 0

	@model_validator(mode="after")
	def check_witness(self) -> "MinorCheckResult":
		if self.ok != (self.witness is None):
			raise ValueError("Witness must be present exactly when the check fails")
		if self.witness is not None and self.witness.value >= 0:
			raise ValueError(f"Witness minor must be negative, got {self.witness.value}")
		return self


class BrandenVariant(str, Enum):
	diagonal = "diagonal"
	offdiagonal = "offdiagonal"
