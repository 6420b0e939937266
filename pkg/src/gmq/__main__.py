"""Module entrypoint for `python -m gmq`."""

from __future__ import annotations

from gmq.cli import main_cli


def main() -> None:
    """Run the gmq CLI."""
    main_cli()


if __name__ == "__main__":
    main()
