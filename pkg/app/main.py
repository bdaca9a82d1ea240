from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from app.core.config import settings
from app.api.v1.api import api_router


app = FastAPI(
	title=settings.PROJECT_NAME,
	docs_url="/docs" if settings.DEBUG else None,
	redoc_url="/redoc" if settings.DEBUG else None
)

# Set all CORS enabled origins
if settings.BACKEND_CORS_ORIGINS:
	app.add_middleware(
		CORSMiddleware,
		allow_origins=settings.BACKEND_CORS_ORIGINS,
		allow_credentials=True,
		allow_methods=["*"],
		allow_headers=["*"],
	)

app.include_router(api_router, prefix=settings.API_V1_STR)


@app.get("/health")
def health_check():
	return {"status": "ok"}
