# -*- coding: utf-8 -*-

import os
import json
import errno
from typing import Any

from pydantic import validate_call, constr
from beans_logging import logger

from phase_ovm.core.constants import WarnEnum


_path_max_length = 1024


@validate_call
def create_dir(
    create_dir: constr(strip_whitespace=True, min_length=1, max_length=_path_max_length),  # type: ignore
    warn_mode: WarnEnum = WarnEnum.DEBUG,
) -> None:
    """Create directory if `create_dir` doesn't exist.

    Args:
        create_dir (str, required): Create directory path.
        warn_mode  (str, optional): Warning message mode, for example: 'ERROR', 'ALWAYS', 'DEBUG', 'IGNORE'. Defaults to 'DEBUG'.

    Raises:
        OSError: When warning mode is set to ERROR and directory already exists.
        OSError: If failed to create directory.
    """

    if not os.path.isdir(create_dir):
        try:
            _message = f"Creating '{create_dir}' directory..."
            if warn_mode == WarnEnum.ALWAYS:
                logger.info(_message)
            elif warn_mode == WarnEnum.DEBUG:
                logger.debug(_message)

            os.makedirs(create_dir)
        except OSError as err:
            if (err.errno == errno.EEXIST) and (warn_mode == WarnEnum.DEBUG):
                logger.debug(f"'{create_dir}' directory already exists!")
            else:
                logger.error(f"Failed to create '{create_dir}' directory!")
                raise

        _message = f"Successfully created '{create_dir}' directory."
        if warn_mode == WarnEnum.ALWAYS:
            logger.success(_message)
        elif warn_mode == WarnEnum.DEBUG:
            logger.debug(_message)

    elif warn_mode == WarnEnum.ERROR:
        raise OSError(errno.EEXIST, f"'{create_dir}' directory already exists!")

    return


@validate_call
def ensure_writable_dir(
    out_dir: constr(strip_whitespace=True, min_length=1, max_length=_path_max_length),  # type: ignore
) -> str:
    """Create `out_dir` when missing and check that files can be written into it.

    Args:
        out_dir (str, required): Output directory path.

    Raises:
        OSError: If the directory can't be created or isn't writable.

    Returns:
        str: Absolute output directory path.
    """

    create_dir(create_dir=out_dir)
    if not os.path.isdir(out_dir):
        raise OSError(errno.ENOTDIR, f"'{out_dir}' is not a directory!")
    if not os.access(out_dir, os.W_OK):
        raise OSError(errno.EACCES, f"'{out_dir}' directory is not writable!")

    return os.path.abspath(out_dir)


@validate_call
def write_text_file(
    file_path: constr(strip_whitespace=True, min_length=1, max_length=_path_max_length),  # type: ignore
    content: str,
) -> str:
    """Write text content with `\\n` line endings, replacing any existing file."""

    _dir = os.path.dirname(file_path)
    if _dir:
        create_dir(create_dir=_dir)

    with open(file_path, "w", encoding="utf-8", newline="\n") as _file:
        _file.write(content)

    logger.debug(f"Wrote '{file_path}' file.")
    return file_path


def write_json_file(file_path: str, data: Any) -> str:
    _content = json.dumps(data, indent=2, sort_keys=False, ensure_ascii=False) + "\n"
    return write_text_file(file_path=file_path, content=_content)


__all__ = [
    "create_dir",
    "ensure_writable_dir",
    "write_text_file",
    "write_json_file",
]
