"""
Точка входа CLI без установки пакета: python scripts/pfdet.py campaign --conjecture C1 --trials 100
"""
import sys
from pathlib import Path

# Добавляем корневую директорию проекта в путь
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from app.cli import main  # noqa: E402


if __name__ == "__main__":
	sys.exit(main())
