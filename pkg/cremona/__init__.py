# cremona/__init__.py
"""Exact computations in the plane Cremona group over Q and prime fields."""
from cremona.errors import CremonaError
from cremona.polymap import CremonaMap, compose, maps_equal, parse_map
from cremona.scalar import field_from_spec

__all__ = ["CremonaError", "CremonaMap", "compose", "maps_equal", "parse_map", "field_from_spec"]
