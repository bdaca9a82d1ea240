"""
Детерминированные случайные потоки для испытаний.

Каждое испытание получает собственный генератор, зерно которого выводится
из пары (master_seed, trial_id). Поэтому результат испытания не зависит
от порядка выполнения и числа процессов.
"""
from hashlib import blake2b
import random

SEED_MASK = (1 << 64) - 1


def derive_seed(master_seed: int, trial_id: int, stream: str = "") -> int:
	"""
	64-битное зерно испытания.

	Args:
		master_seed: Главное зерно кампании
		trial_id: Номер испытания
		stream: Необязательное имя подпотока (например, код гипотезы)

	Returns:
		Беззнаковое 64-битное число
	"""
	if master_seed < 0 or trial_id < 0:
		raise ValueError(f"Seeds must be non-negative, got master_seed={master_seed}, trial_id={trial_id}")
	key = f"{master_seed & SEED_MASK}:{stream}:{trial_id}".encode("utf-8")
	return int.from_bytes(blake2b(key, digest_size=8).digest(), "big")


def trial_rng(master_seed: int, trial_id: int, stream: str = "") -> random.Random:
	return random.Random(derive_seed(master_seed, trial_id, stream))
