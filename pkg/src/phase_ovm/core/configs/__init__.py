# -*- coding: utf-8 -*-

from ._base import *
from ._run import *
from ._main import *
