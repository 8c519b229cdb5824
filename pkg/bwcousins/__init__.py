"""Barnes-Wall lattices, Reed-Muller codes and their midwest cousins."""
from pathlib import Path

__version__ = (Path(__file__).parent / "VERSION").read_text(encoding="utf-8").strip()
