from pydantic import BaseModel, field_validator, model_validator
from typing import Iterable, List, Optional, Tuple
from fractions import Fraction
from enum import Enum

from app.schemas.common import Rational, PolynomialField


class Provenance(str, Enum):
	"""Откуда взялась последовательность (класс PF, из которого она сгенерирована)."""
	raw = "raw"
	pf2 = "pf2"
	pf_r = "pf_r"
	pf_inf = "pf_inf"
	q3 = "q3"
	geometric = "geometric"
	ones = "ones"
	reciprocal_pochhammer = "reciprocal_pochhammer"


class Sequence(BaseModel):
	"""
	Конечная неотрицательная последовательность f_0..f_n.

	Инварианты: все значения >= 0, нет внутренних нулей, не нулевая целиком.
	Результаты преобразований (Грабарек, Бренден) строятся через model_construct
	и могут эти инварианты нарушать - см. is_admissible().
	"""
	values: List[Rational]
	provenance: Provenance = Provenance.raw
	# r для pf_r, c для reciprocal_pochhammer
	provenance_param: Optional[Rational] = None

	@field_validator("values")
	@classmethod
	def check_values(cls, v: List[Fraction]) -> List[Fraction]:
		if not v:
			raise ValueError("Sequence must have at least one term")
		if any(value < 0 for value in v):
			raise ValueError("Sequence values must be non-negative")
		if all(value == 0 for value in v):
			raise ValueError("Sequence must not be identically zero")
		if has_internal_zero(v):
			raise ValueError("Sequence must not have internal zeros")
		return v

	@property
	def n(self) -> int:
		return len(self.values) - 1

	@property
	def tag(self) -> str:
		if self.provenance_param is None:
			return self.provenance.value
		from app.core.exactmath import format_rational
		return f"{self.provenance.value}({format_rational(self.provenance_param)})"

	def at(self, k: int) -> Fraction:
		"""f_k с нулевым продолжением вне {0..n}."""
		if 0 <= k < len(self.values):
			return self.values[k]
		return Fraction(0)

	def truncate(self, n: int) -> "Sequence":
		return self.model_copy(update={"values": list(self.values[: n + 1])})

	def is_admissible(self) -> bool:
		values = self.values
		return (
			bool(values)
			and all(value >= 0 for value in values)
			and any(value != 0 for value in values)
			and not has_internal_zero(values)
		)

	@classmethod
	def of(cls, values: Iterable, provenance: Provenance = Provenance.raw, provenance_param=None) -> "Sequence":
		return cls(values=list(values), provenance=provenance, provenance_param=provenance_param)

	@classmethod
	def unchecked(cls, values: Iterable[Fraction], provenance: Provenance = Provenance.raw) -> "Sequence":
		"""Последовательность без проверки инвариантов (для результатов преобразований)."""
		return cls.model_construct(values=[Fraction(v) for v in values], provenance=provenance, provenance_param=None)

	@classmethod
	def ones(cls, n: int) -> "Sequence":
		return cls(values=[Fraction(1)] * (n + 1), provenance=Provenance.ones)

	@classmethod
	def geometric(cls, n: int, q, f0=1) -> "Sequence":
		q = Fraction(q)
		f0 = Fraction(f0)
		if q <= 0 or f0 <= 0:
			raise ValueError(f"Geometric sequence needs q > 0 and f0 > 0, got q={q}, f0={f0}")
		return cls(values=[f0 * q ** k for k in range(n + 1)], provenance=Provenance.geometric)


def has_internal_zero(values: List[Fraction]) -> bool:
	"""Есть ли ноль, слева и справа от которого стоят ненулевые элементы."""
	support = [i for i, value in enumerate(values) if value != 0]
	if not support:
		return False
	return any(values[i] == 0 for i in range(support[0], support[-1] + 1))


class Multiset(BaseModel):
	"""Мультимножество рациональных чисел, хранится отсортированным по возрастанию."""
	elements: Tuple[Rational, ...] = ()

	@field_validator("elements")
	@classmethod
	def sort_elements(cls, v: Tuple[Fraction, ...]) -> Tuple[Fraction, ...]:
		return tuple(sorted(v))

	def __len__(self) -> int:
		return len(self.elements)

	@classmethod
	def of(cls, values: Iterable) -> "Multiset":
		return cls(elements=tuple(values))


class PhiDecomposition(BaseModel):
	"""Данные разложения Φ_k для P_n: A_k, B_k, l_k(x) = -A_k x + B_k, χ_k и сам Φ_k."""
	n: int
	k: int
	A: Rational
	B: Rational
	l: PolynomialField
	chi: Multiset
	phi: PolynomialField

	class Config:
		arbitrary_types_allowed = True

	@model_validator(mode="after")
	def check_shape(self) -> "PhiDecomposition":
		if not 0 <= 2 * self.k <= self.n:
			raise ValueError(f"k must lie in [0, n/2], got n={self.n}, k={self.k}")
		if 2 <= self.k and self.n >= 4 and len(self.chi) != self.n - 4:
			raise ValueError(f"chi_{self.k} must have n-4={self.n - 4} elements, got {len(self.chi)}")
		return self


def values_of(f) -> List[Fraction]:
	"""Значения последовательности: из Sequence, Multiset-подобного объекта или списка рациональных."""
	if isinstance(f, Sequence):
		return list(f.values)
	from app.core.exactmath import to_rational
	return [to_rational(v) for v in f]
