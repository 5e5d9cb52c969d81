#!/usr/bin/env python
# -*- coding: utf-8 -*-

## Internal modules
from phase_ovm.__main__ import main
from phase_ovm.logger import logger


if __name__ == "__main__":
    logger.debug("Starting phase-ovm from 'main.py'...")
    main()
