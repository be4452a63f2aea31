from .app import create_app
from .registry import ModelRegistry, RegisteredModel

__all__ = ["ModelRegistry", "RegisteredModel", "create_app"]
