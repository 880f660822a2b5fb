from .routes import cones, families, screen

__all__ = ["cones", "families", "screen"]
