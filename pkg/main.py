"""Command-line entry point for computing Hunter-type self-similar profiles."""

from __future__ import annotations

from hunter_profiles.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
