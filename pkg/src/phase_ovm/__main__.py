# -*- coding: utf-8 -*-

from phase_ovm.cli import run_command


def main() -> None:
    """Main function."""

    raise SystemExit(run_command())


if __name__ == "__main__":
    main()
