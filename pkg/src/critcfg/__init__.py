"""critcfg: exact decision procedures for critical multi-view configurations."""

from .scalars import Fraction, NeedsExtension, QuadExt, rat, rat_str
from .linalg import Matrix
from .camera import Camera, CenterProjected, Scene, camera_with_center

__all__ = [
    "Fraction", "NeedsExtension", "QuadExt", "rat", "rat_str",
    "Matrix",
    "Camera", "CenterProjected", "Scene", "camera_with_center",
]

__version__ = "0.1.0"
