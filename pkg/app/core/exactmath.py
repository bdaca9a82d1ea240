"""
Точная арифметика: рациональные числа, многочлены от одной переменной
и комбинаторные примитивы.

Многочлены хранятся как sympy.Poly над QQ; наружу коэффициенты отдаются
как fractions.Fraction, которые используются во всех схемах и отчётах.

Формулы:
- (x+s)_k = (x+s)(x+s+1)...(x+s+k-1), (x+s)_0 = 1
- (x)_p = Σ_j S^p_j x^j (беззнаковые числа Стирлинга первого рода)
- Π(x+a_i) = Σ_k e_{q-k}(a)·x^k
"""
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, List, Optional, Sequence, Tuple, Union
import math

import sympy
from sympy import QQ, Poly, rf
from sympy.functions.combinatorial.numbers import stirling

RationalLike = Union[int, Fraction, str]

SYMBOL = sympy.Symbol("x")


def to_rational(value: RationalLike) -> Fraction:
	"""
	Приводит значение к Fraction.

	Args:
		value: int, Fraction или строка вида "p/q" / "p"

	Returns:
		Точное рациональное число

	Raises:
		ValueError: Для float и нераспознанных строк
	"""
	if isinstance(value, Fraction):
		return value
	if isinstance(value, bool):
		raise ValueError(f"Boolean is not a rational number: {value!r}")
	if isinstance(value, int):
		return Fraction(value)
	if isinstance(value, str):
		return parse_rational(value)
	raise ValueError(f"Unsupported rational value {value!r} (floats are not accepted)")


def parse_rational(text: str) -> Fraction:
	"""Разбирает строку "p/q" или "p" в Fraction."""
	cleaned = text.strip()
	if not cleaned:
		raise ValueError("Empty rational literal")
	try:
		if "/" in cleaned:
			numerator, denominator = cleaned.split("/", 1)
			return Fraction(int(numerator), int(denominator))
		return Fraction(int(cleaned))
	except (ValueError, ZeroDivisionError) as e:
		raise ValueError(f"Invalid rational literal {text!r}: {e}") from e


def format_rational(value: Fraction) -> str:
	"""Сериализует рациональное число как "p/q", знаменатель 1 опускается."""
	value = to_rational(value)
	if value.denominator == 1:
		return str(value.numerator)
	return f"{value.numerator}/{value.denominator}"


def parse_rational_list(text: str) -> List[Fraction]:
	"""Разбирает список через запятую: "1,2,3/2"."""
	return [parse_rational(part) for part in text.split(",") if part.strip()]


# ========== Мост Fraction <-> sympy ==========

def to_sympy(value: RationalLike) -> sympy.Rational:
	value = to_rational(value)
	return sympy.Rational(value.numerator, value.denominator)


def from_sympy(value: Any) -> Fraction:
	"""sympy.Rational (или Integer) в Fraction; иррациональные значения не принимаются."""
	value = sympy.sympify(value)
	if not isinstance(value, sympy.Rational):
		raise ValueError(f"Expected a rational sympy value, got {value!r}")
	return Fraction(int(value.p), int(value.q))


def to_qq(value: RationalLike):
	"""Элемент домена QQ для DomainMatrix."""
	value = to_rational(value)
	return QQ(value.numerator, value.denominator)


def from_qq(value) -> Fraction:
	return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


class Polynomial:
	"""
	Многочлен от x с рациональными коэффициентами поверх sympy.Poly(domain=QQ).

	coeffs[i] - коэффициент при x^i. Старший хранимый коэффициент ненулевой;
	нулевой многочлен имеет пустой кортеж коэффициентов и степень None.
	"""

	__slots__ = ("_poly", "_coeffs")

	def __init__(self, coeffs: Iterable[RationalLike] = ()):
		values = [to_rational(c) for c in coeffs]
		while values and values[-1] == 0:
			values.pop()
		self._coeffs: Tuple[Fraction, ...] = tuple(values)
		self._poly = Poly.from_list([to_sympy(c) for c in reversed(values)] or [0], SYMBOL, domain=QQ)

	@classmethod
	def from_poly(cls, poly: Poly) -> "Polynomial":
		"""Обёртка над готовым sympy.Poly от одной переменной."""
		poly = poly.set_domain(QQ)
		values = [from_sympy(c) for c in reversed(poly.all_coeffs())]
		while values and values[-1] == 0:
			values.pop()
		result = cls.__new__(cls)
		result._poly = poly
		result._coeffs = tuple(values)
		return result

	@classmethod
	def constant(cls, value: RationalLike) -> "Polynomial":
		return cls([value])

	@classmethod
	def monomial(cls, power: int, coefficient: RationalLike = 1) -> "Polynomial":
		if power < 0:
			raise ValueError(f"Monomial power must be non-negative, got {power}")
		return cls([0] * power + [coefficient])

	@classmethod
	def linear(cls, shift: RationalLike) -> "Polynomial":
		"""x + shift"""
		return cls([shift, 1])

	@classmethod
	def from_strings(cls, coeffs: Iterable[str]) -> "Polynomial":
		return cls(parse_rational(c) for c in coeffs)

	@property
	def poly(self) -> Poly:
		return self._poly

	@property
	def coeffs(self) -> Tuple[Fraction, ...]:
		return self._coeffs

	@property
	def degree(self) -> Optional[int]:
		"""Степень; None для нулевого многочлена."""
		if not self._coeffs:
			return None
		return len(self._coeffs) - 1

	@property
	def is_zero(self) -> bool:
		return not self._coeffs

	@property
	def leading(self) -> Fraction:
		if not self._coeffs:
			return Fraction(0)
		return self._coeffs[-1]

	def coefficient(self, power: int) -> Fraction:
		if 0 <= power < len(self._coeffs):
			return self._coeffs[power]
		return Fraction(0)

	def __eq__(self, other: object) -> bool:
		if isinstance(other, Polynomial):
			return self._coeffs == other._coeffs
		if isinstance(other, (int, Fraction)):
			return self._coeffs == Polynomial.constant(other)._coeffs
		return NotImplemented

	def __hash__(self) -> int:
		return hash(self._coeffs)

	def __reduce__(self):
		return (Polynomial, (self._coeffs,))

	def __repr__(self) -> str:
		return f"Polynomial({self.format()!r})"

	def __bool__(self) -> bool:
		return not self.is_zero

	def __neg__(self) -> "Polynomial":
		return Polynomial.from_poly(-self._poly)

	def __add__(self, other: Union["Polynomial", RationalLike]) -> "Polynomial":
		return Polynomial.from_poly(self._poly + _as_polynomial(other)._poly)

	__radd__ = __add__

	def __sub__(self, other: Union["Polynomial", RationalLike]) -> "Polynomial":
		return Polynomial.from_poly(self._poly - _as_polynomial(other)._poly)

	def __rsub__(self, other: RationalLike) -> "Polynomial":
		return _as_polynomial(other) - self

	def __mul__(self, other: Union["Polynomial", RationalLike]) -> "Polynomial":
		if not isinstance(other, Polynomial):
			return self.scale(other)
		return Polynomial.from_poly(self._poly * other._poly)

	__rmul__ = __mul__

	def __call__(self, point: RationalLike) -> Fraction:
		return self.evaluate(point)

	def scale(self, factor: RationalLike) -> "Polynomial":
		return Polynomial.from_poly(self._poly.mul_ground(to_sympy(factor)))

	def evaluate(self, point: RationalLike) -> Fraction:
		if self.is_zero:
			return Fraction(0)
		return from_sympy(self._poly.eval(to_sympy(point)))

	def derivative(self) -> "Polynomial":
		return Polynomial.from_poly(self._poly.diff(SYMBOL))

	def shift(self, offset: RationalLike) -> "Polynomial":
		"""Возвращает p(x + offset) (сдвиг Тейлора)."""
		offset = to_rational(offset)
		if offset == 0 or self.degree is None or self.degree == 0:
			return self
		return Polynomial.from_poly(self._poly.shift(to_sympy(offset)))

	def divmod(self, divisor: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
		"""Деление с остатком над Q."""
		if divisor.is_zero:
			raise ZeroDivisionError("Polynomial division by zero polynomial")
		quotient, remainder = self._poly.div(divisor._poly)
		return Polynomial.from_poly(quotient), Polynomial.from_poly(remainder)

	def exact_div(self, divisor: "Polynomial") -> "Polynomial":
		quotient, remainder = self.divmod(divisor)
		if not remainder.is_zero:
			raise ValueError(f"{self.format()} is not divisible by {divisor.format()}")
		return quotient

	def monic(self) -> "Polynomial":
		if self.is_zero:
			return self
		return Polynomial.from_poly(self._poly.monic())

	def to_strings(self) -> List[str]:
		"""Коэффициенты по возрастанию степеней как строки "p/q"."""
		return [format_rational(c) for c in self._coeffs]

	def format(self) -> str:
		"""Человекочитаемая запись по возрастанию степеней: "18 + 18x"."""
		if self.is_zero:
			return "0"
		parts: List[str] = []
		for power, c in enumerate(self._coeffs):
			if c == 0:
				continue
			sign = "-" if c < 0 else "+"
			magnitude = abs(c)
			if power == 0:
				body = format_rational(magnitude)
			else:
				monomial = "x" if power == 1 else f"x^{power}"
				if magnitude == 1:
					body = monomial
				elif magnitude.denominator == 1:
					body = f"{magnitude.numerator}{monomial}"
				else:
					body = f"({format_rational(magnitude)}){monomial}"
			if not parts:
				parts.append(body if sign == "+" else f"-{body}")
			else:
				parts.append(f"{sign} {body}")
		return " ".join(parts)


def _as_polynomial(value: Union[Polynomial, RationalLike]) -> Polynomial:
	if isinstance(value, Polynomial):
		return value
	return Polynomial.constant(value)


X = Polynomial([0, 1])
ONE = Polynomial([1])
ZERO = Polynomial()


# ========== Операции кольца ==========

def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
	return a * b


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
	return a + b


def poly_scale(p: Polynomial, factor: RationalLike) -> Polynomial:
	return p.scale(factor)


def poly_eval(p: Polynomial, point: RationalLike) -> Fraction:
	return p.evaluate(point)


def poly_derivative(p: Polynomial) -> Polynomial:
	return p.derivative()


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
	"""Нормированный НОД над QQ; gcd(0, 0) = 0."""
	return Polynomial.from_poly(a.poly.gcd(b.poly))


def poly_squarefree(p: Polynomial) -> Polynomial:
	"""Свободная от квадратов часть p / gcd(p, p'), нормированная."""
	if p.is_zero:
		raise ValueError("Zero polynomial has no squarefree part")
	if p.degree == 0:
		return ONE
	return Polynomial.from_poly(p.poly.sqf_part()).monic()


def normalize_leading(p: Polynomial) -> Polynomial:
	"""Умножает на -1, если старший коэффициент отрицателен."""
	if not p.is_zero and p.leading < 0:
		return -p
	return p


# ========== Комбинаторика ==========

@lru_cache(maxsize=4096)
def pochhammer(shift: RationalLike, k: int) -> Polynomial:
	"""
	Возрастающий факториал (x+shift)_k как многочлен от x.

	Args:
		shift: Сдвиг аргумента
		k: Длина произведения, k >= 0

	Returns:
		Π_{i=0}^{k-1}(x + shift + i); для k = 0 - единица
	"""
	if k < 0:
		raise ValueError(f"Pochhammer length must be non-negative, got {k}")
	if k == 0:
		return ONE
	return Polynomial.from_poly(rf(Polynomial.linear(shift).poly, k))


def pochhammer_value(a: RationalLike, k: int) -> Fraction:
	"""Числовой возрастающий факториал (a)_k."""
	if k < 0:
		raise ValueError(f"Pochhammer length must be non-negative, got {k}")
	return from_sympy(rf(to_sympy(a), k))


def factorial(n: int) -> Fraction:
	if n < 0:
		raise ValueError(f"Factorial of negative number {n}")
	return Fraction(math.factorial(n))


def binomial(n: int, k: int) -> Fraction:
	"""C(n, k); ноль вне диапазона 0 <= k <= n."""
	if n < 0:
		raise ValueError(f"Binomial top index must be non-negative, got {n}")
	if k < 0 or k > n:
		return Fraction(0)
	return Fraction(math.comb(n, k))


def multinomial(n: int, parts: Sequence[int]) -> Fraction:
	"""
	Мультиномиальный коэффициент n! / Π k_i!.

	Raises:
		ValueError: Если сумма частей не равна n или есть отрицательные части
	"""
	if any(part < 0 for part in parts):
		raise ValueError(f"Multinomial parts must be non-negative, got {list(parts)}")
	if sum(parts) != n:
		raise ValueError(f"Multinomial parts {list(parts)} do not sum to {n}")
	result = math.factorial(n)
	for part in parts:
		result //= math.factorial(part)
	return Fraction(result)


@lru_cache(maxsize=None)
def stirling_first_unsigned(p: int, j: int) -> Fraction:
	"""
	Беззнаковое число Стирлинга первого рода S^p_j: (x)_p = Σ_j S^p_j x^j.

	S^p_q = 0 при q > p, S^p_0 = 0 при p >= 1, S^0_0 = 1.
	"""
	if p < 0 or j < 0:
		raise ValueError(f"Stirling indices must be non-negative, got ({p}, {j})")
	if j > p:
		return Fraction(0)
	return Fraction(int(stirling(p, j, kind=1)))


def product_of_linear(vals: Iterable[RationalLike]) -> Polynomial:
	"""Π(x + a_i); vals - список рациональных или Multiset."""
	poly = Poly(1, SYMBOL, domain=QQ)
	# Multiset - pydantic-модель, её итерация дала бы пары полей
	for raw in getattr(vals, "elements", vals):
		poly = poly * Polynomial.linear(raw).poly
	return Polynomial.from_poly(poly)


def elementary_symmetric_all(vals: Iterable[RationalLike]) -> List[Fraction]:
	"""
	Все элементарные симметрические многочлены [e_0, ..., e_q].

	Коэффициенты Π(x + a_i) по убыванию степеней; e_0 = 1.
	"""
	return list(reversed(product_of_linear(vals).coeffs))


def common_denominator(values: Iterable[Fraction]) -> int:
	result = 1
	for value in values:
		result = math.lcm(result, to_rational(value).denominator)
	return result
