"""
Logger class
"""

import json
import logging
import os
import pathlib
from inspect import (
    currentframe,
    getframeinfo
)
from typing import (
    Optional,
    Dict
)


class Logger:
    """
    Base class for loggers.

    This base class does no logging.
    """

    _instance: Optional['Logger'] = None

    DECISION = 'decision'
    REDISTRIBUTION = 'redistribution'
    ORACLE_BUDGET = 'oracle_budget'
    INPUT_ERROR = 'input_error'
    CONFIGURATION = 'configuration'

    @classmethod
    def instance(cls) -> 'Logger':
        """
        Returns the singleton instance of the logger
        """
        return cls._instance

    @classmethod
    def set_instance(cls, logger: 'Logger'):
        """
        Sets the singleton instance of the logger
        """
        cls._instance = logger

    def log_message_json(self, message: Dict):
        """
        Logs a message using a JSON dictionary value
        """

    def log_error_json(self, error: Dict):
        """
        Logs an error using a JSON dictionary value
        """

    @staticmethod
    def anonymize_filename(filename: str) -> str:
        """
        Removes user-sensitive details from a filename, by making
        it a relative filename to the package install directory
        """
        package_install_path = (
            pathlib.Path(__file__).parent.parent.resolve())
        return os.path.relpath(pathlib.Path(filename).resolve(),
                               start=package_install_path)


class LogToStreamLogger(Logger):
    """
    Routes messages to the standard ``asbg`` logger.

    Informational messages go out at DEBUG level so library users only
    see them when they opt in (the CLI does so with --verbose). Errors
    are tagged with the calling location, like the messages of every
    other logger in the toolkit.
    """

    def __init__(self, name: str = 'asbg'):
        super().__init__()
        self._logger = logging.getLogger(name)

    def log_message_json(self, message: Dict):
        self._logger.debug(json.dumps(message, sort_keys=True))

    def log_error_json(self, error: Dict):
        frame = currentframe().f_back
        filename = self.anonymize_filename(getframeinfo(frame).filename)

        error['source_file'] = filename
        error['source_line'] = frame.f_lineno
        error['source_function'] = getframeinfo(frame).function

        self._logger.warning(json.dumps(error, sort_keys=True))


Logger.set_instance(LogToStreamLogger())
