"""Read-only figure renderer for the simulator's CSV/manifest output."""

from .render import (
    STYLE_VERSION,
    ChecksumError,
    PlotJob,
    RenderError,
    SchemaError,
    render,
    render_all,
)

__version__ = "0.1.0"
__all__ = [
    "PlotJob", "render", "render_all",
    "RenderError", "SchemaError", "ChecksumError",
    "STYLE_VERSION", "__version__",
]
