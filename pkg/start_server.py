#!/usr/bin/env python3
"""
Startup script for the CLI rank laboratory API
"""

import logging
import sys
from pathlib import Path

# Add the current directory to Python path
sys.path.append(str(Path(__file__).parent))

from app.config import settings

logging.basicConfig(level=getattr(logging, settings.log_level.upper()))
logger = logging.getLogger(__name__)


def main():
    """Start the FastAPI app with uvicorn"""
    logger.info("🚀 Starting CLI rank laboratory...")
    logger.info(f"🌐 Starting server on {settings.api_host}:{settings.api_port}")

    try:
        import uvicorn
        uvicorn.run(
            "app.main:app",
            host=settings.api_host,
            port=settings.api_port,
            log_level=settings.log_level.lower()
        )
    except Exception as e:
        logger.error(f"❌ Failed to start server: {e}")
        sys.exit(1)


if __name__ == "__main__":
    main()
