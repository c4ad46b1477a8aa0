from __future__ import annotations

from pathlib import Path

from dotenv import load_dotenv

from ignifront.cli import app


def start() -> None:
    """Console entry point, `IGNIFRONT_*` settings may come from `.env` in the working directory."""

    load_dotenv(dotenv_path=Path.cwd() / ".env")
    app()


if __name__ == "__main__":
    start()
