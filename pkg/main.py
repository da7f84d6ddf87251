"""
Etale Modules - command line entry point

Exact verification of etale and prehomogeneous modules:
    python main.py family --name so-chain --n 4
    python main.py verify --spec "gl(1) : std(1) + std(1)"
"""

import logging
import sys
from pathlib import Path

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

from config.settings import config
from src.cli import run

handlers = [logging.StreamHandler(sys.stderr)]
if config.logging.file:
    handlers.append(logging.FileHandler(config.logging.file, mode="a"))

# Diagnostics on stderr, JSON reports on stdout
logging.basicConfig(level=config.logging.level, format=config.logging.format, handlers=handlers)


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
