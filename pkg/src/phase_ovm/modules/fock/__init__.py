# -*- coding: utf-8 -*-

from .schemas import *
from .service import *
