"""streambench-plots: render bandwidth curves and model overlays from sweep files."""

from .io import FitEntry, SampleRow, SchemaError, read_fits, read_samples
from .render import Curve, RenderOptions, RenderResult, model_gbps, render

__version__ = "0.1.0"

__all__ = ["Curve", "FitEntry", "RenderOptions", "RenderResult", "SampleRow",
           "SchemaError", "model_gbps", "read_fits", "read_samples", "render"]
