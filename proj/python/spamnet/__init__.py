"""Web-spam MLP classifier toolkit: feature extraction, trainers, metrics."""

import os as _os
from pathlib import Path as _Path

# Make the bundled lexicon files the default when the package ships them.
_bundled = _Path(__file__).resolve().parent / "data"
if _bundled.is_dir() and "SPAMNET_DATA_DIR" not in _os.environ:
    _os.environ["SPAMNET_DATA_DIR"] = str(_bundled)

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
