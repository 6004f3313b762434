#!/usr/bin/python3
import logging
import signal
import sys
from collections.abc import Sequence

import cli
import error_messages


def main(argv: Sequence[str] | None = None):
    # Parsing errors exit with code 2 before anything else runs
    arguments = cli.parse_arguments(argv)

    # Catch Keyboard Interrupts for a clean close
    signal.signal(signal.SIGINT, lambda code, _: sys.exit(128 + code))

    try:
        logging.basicConfig(
            level=logging.DEBUG if arguments.verbose else logging.WARNING,
            format="%(asctime)s - %(levelname)s - %(message)s",
            stream=sys.stderr,
        )
        exit_code = cli.run(arguments)
    except Exception as exception:  # noqa: BLE001 # We really want to catch everything here
        error_messages.handle_top_level_exceptions(exception)

    sys.exit(exit_code)


if __name__ == "__main__":
    main()
