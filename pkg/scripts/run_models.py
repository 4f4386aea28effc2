# run_models.py
"""
Script to compute TC bounds for every model file in the models directory.

This script initializes the logging configuration, runs the ``report``
command on each model, and saves one key = value document per model.
"""

from logging import getLogger
from pathlib import Path

from sullivan_tc import setup_logging
from sullivan_tc.cli import run
from sullivan_tc.config import MODELS_DIR

setup_logging()
logger = getLogger(__name__)

OUTPUT_DIR = Path(__file__).parents[1] / "output"


def main():
    OUTPUT_DIR.mkdir(exist_ok=True)
    failures = []
    for path in sorted(MODELS_DIR.glob("*.model")):
        result = run("report", path)
        (OUTPUT_DIR / f"{path.stem}.txt").write_text(result.text, encoding="utf-8")
        if result.exit_code:
            failures.append(path.stem)
            logger.error(f"{path.stem}: exit {result.exit_code}, {result.get('error')}")
        else:
            logger.info(f"{path.stem}: TC in {result.get('bounds.interval')}")
    if failures:
        logger.error(f"Failed models: {failures}")
    return failures


if __name__ == "__main__":
    main()
