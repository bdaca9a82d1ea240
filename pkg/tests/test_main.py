import httpx
import pytest
from fastapi.testclient import TestClient

from app.core.config import settings
from app.main import app

client = TestClient(app)

API = settings.API_V1_STR


def test_health_check():
	"""Test health check endpoint"""
	response = client.get("/health")
	assert response.status_code == 200
	assert response.json() == {"status": "ok"}


def test_expand_P():
	"""P_3 of (1,2,2,1) is 18 + 18x"""
	response = client.post(f"{API}/polynomials/expand", json={"mode": "P", "n": 3, "f": ["1", "2", "2", "1"]})
	assert response.status_code == 200
	data = response.json()
	assert data["polynomial"] == ["18", "18"]
	assert data["degree"] == 1
	assert all(v["holds"] for v in data["verdicts"])


def test_expand_zero_polynomial():
	"""Q vanishes on the all-ones sequence"""
	response = client.post(
		f"{API}/polynomials/expand",
		json={"mode": "Q", "n": 3, "alpha": "1/2", "beta": "3", "f": ["1", "1", "1", "1"]},
	)
	assert response.status_code == 200
	assert response.json()["polynomial"] == []
	assert response.json()["verdicts"] == []


def test_expand_bad_input():
	"""Missing alpha is a validation error, a short sequence is a bad request"""
	assert client.post(f"{API}/polynomials/expand", json={"mode": "Q", "n": 3, "f": ["1"] * 4}).status_code == 422
	assert client.post(f"{API}/polynomials/expand", json={"mode": "P", "n": 6, "f": ["1"] * 4}).status_code == 400


def test_check_conjecture():
	"""Single input check"""
	response = client.post(f"{API}/conjectures/check", json={"conjecture": "C4", "n": 3, "r": 2, "f": ["1", "3", "3", "1"]})
	assert response.status_code == 200
	assert response.json()["outcome"] == "holds"

	response = client.post(f"{API}/conjectures/check", json={"conjecture": "L2", "n": 3, "f": ["1", "3", "3", "1"]})
	assert response.status_code == 400


def test_generate_sequences():
	"""Generator output is reproducible"""
	body = {"spec": {"class": "pf2", "n": 4, "seed": 3}, "count": 2}
	first = client.post(f"{API}/sequences/generate", json=body)
	second = client.post(f"{API}/sequences/generate", json=body)
	assert first.status_code == 200
	assert len(first.json()["sequences"]) == 2
	assert first.json() == second.json()


def test_generate_bad_spec():
	"""PF_r generators need r"""
	response = client.post(f"{API}/sequences/generate", json={"spec": {"class": "pf_r_sector", "n": 4}})
	assert response.status_code == 422


def test_campaign_saves_report(monkeypatch, tmp_path):
	"""Campaign report is returned and written to disk"""
	monkeypatch.setattr(settings, "REPORTS_LOCAL_PATH", str(tmp_path))
	response = client.post(f"{API}/campaigns", json={"conjectures": ["T1"], "trials": 2, "n_max": 5, "workers": 1, "seed": 3})
	assert response.status_code == 200
	data = response.json()
	assert data["report"]["totals"]["T1"]["trials"] == 2
	assert data["report_path"].endswith("campaign_3_2.json")
	assert (tmp_path / "campaign_3_2.json").exists()


@pytest.mark.asyncio
async def test_health_async():
	"""Same routes through the ASGI transport"""
	transport = httpx.ASGITransport(app=app)
	async with httpx.AsyncClient(transport=transport, base_url="http://test") as ac:
		response = await ac.get("/health")
		assert response.status_code == 200
		response = await ac.post(f"{API}/polynomials/expand", json={"mode": "Pr", "n": 3, "r": 2, "f": ["1", "2", "2", "1"]})
		assert response.status_code == 200
		assert response.json()["text"].startswith("18 + 18x")
