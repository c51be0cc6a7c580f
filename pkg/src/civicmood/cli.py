"""Command-line entrypoints: run the API server or load a demo dataset."""

from __future__ import annotations

from pathlib import Path

import click
import uvicorn

from .api import create_app
from .config import Config
from .demo import seed_demo_data
from .storage import open_store


@click.group()
def main() -> None:
    """Civic participation platform server."""


@main.command()
@click.option("--bind", default=None, help="host:port to bind (overrides BIND_ADDR)")
@click.option(
    "--webapp-dir",
    default="frontend/dist",
    show_default=True,
    help="static web client directory, mounted under /app when present",
)
def serve(bind: str | None, webapp_dir: str) -> None:
    """Apply migrations and serve the JSON API."""
    config = Config.from_env()
    if bind:
        config.bind_addr = bind
    store = open_store(config.storage_url, migrate=True)
    app = create_app(config=config, store=store, webapp_dir=Path(webapp_dir))
    host, _, port = config.bind_addr.rpartition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))


@main.command("seed-demo")
def seed_demo() -> None:
    """Load a sample scenario with visions, survey responses, and guesses."""
    config = Config.from_env()
    store = open_store(config.storage_url, migrate=True)
    if config.storage_url in ("embedded:", "embedded"):
        click.echo(
            "warning: STORAGE_URL is in-memory; seeded data vanishes when this "
            "process exits. Use STORAGE_URL=embedded:/path/to/file to keep it."
        )
    summary = seed_demo_data(store)
    click.echo(
        f"seeded scenario {summary.scenario_id!r} ({summary.title}): "
        f"{summary.users} users, {summary.responses} survey responses, "
        f"{summary.visions} visions, {summary.guesses} guesses"
    )


if __name__ == "__main__":
    main()
