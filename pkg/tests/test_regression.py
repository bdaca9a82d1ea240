import pytest

from app.services.campaign import EXIT_OK
from app.services.regression import CHECKS, regression_suite


@pytest.mark.slow
def test_regression_suite_passes():
	"""Every identity in the fixed suite holds."""
	report = regression_suite()
	failed = [(check.name, check.detail) for check in report.regression if not check.passed]
	assert failed == []
	assert len(report.regression) == len(CHECKS)
	assert report.exit_code == EXIT_OK


def test_check_names_are_unique():
	names = [name for name, _ in CHECKS]
	assert len(names) == len(set(names))
