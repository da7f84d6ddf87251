"""
HTTP entry point for the etale-modules toolkit
Serves the verification API with uvicorn.
"""

import logging
import sys
from pathlib import Path

# Add the project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

import uvicorn
from dotenv import load_dotenv

load_dotenv()

from config.settings import config
from src.api.routes import app

handlers = [logging.StreamHandler()]
if config.logging.file:
    handlers.append(logging.FileHandler(config.logging.file, mode="a"))

logging.basicConfig(
    level=logging.DEBUG if config.api.debug else config.logging.level,
    format=config.logging.format,
    handlers=handlers,
)

logger = logging.getLogger(__name__)


def main():
    """Main entry point."""
    logger.info(f"Starting {config.app_name} {config.version} on {config.api.host}:{config.api.port}")
    uvicorn.run(
        app,
        host=config.api.host,
        port=config.api.port,
        log_level="debug" if config.api.debug else "info",
        reload=config.api.reload
    )


if __name__ == "__main__":
    main()
