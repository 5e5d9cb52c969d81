# -*- coding: utf-8 -*-

from phase_ovm.__version__ import __version__


__all__ = ["__version__"]
