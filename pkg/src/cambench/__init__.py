"""cambench: synthetic camera degradations for driving scenes, plus
panoptic-quality and full-reference image-quality evaluation tooling."""

__version__ = "0.1.0"
