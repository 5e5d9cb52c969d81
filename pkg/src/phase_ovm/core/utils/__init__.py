# -*- coding: utf-8 -*-

from ._io import *
from ._parallel import *
from . import _validator as validator
