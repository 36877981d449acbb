"""
Package metadata parser
"""

import configparser
from pathlib import Path
from typing import Optional

from .constants import DEFAULT_BUDGETS


class PackageMetadataParser:
    """
    Package metadata parser
    """

    def __init__(self, path: Optional[Path] = None):
        self._meta_parser = configparser.ConfigParser()
        self._meta_parser.read(
            str(path or Path(__file__).parent.parent / 'metadata.txt')
        )
        self._prop_cache = {}

    def get_property(self, name, section='general'):
        """
        Reads the property with the given name from the package metadata.
        """
        key = f'{section}.{name}'
        if key in self._prop_cache:
            return self._prop_cache[key]
        try:
            value = self._meta_parser.get(section, name)
        except (configparser.NoOptionError, configparser.NoSectionError):
            value = None
        self._prop_cache[key] = value
        return value

    def get_int_property(self, name, section='budget') -> int:
        """
        Reads an integer tunable, falling back to the built in default
        """
        value = self.get_property(name, section)
        if value is None:
            return DEFAULT_BUDGETS[name]
        try:
            return int(value)
        except ValueError:
            return DEFAULT_BUDGETS[name]

    def get_app_name(self) -> str:
        """
        Returns the name of the toolkit.
        """
        return self.get_property("name")

    def get_short_app_name(self) -> str:
        """
        Returns the short name of the toolkit, or the full name if no
        short name is set.
        """
        short_name = self.get_property("shortName")
        if short_name:
            return short_name
        return self.get_app_name()

    def get_version(self) -> str:
        """
        Returns the version string.
        """
        return self.get_property("version").strip()


PACKAGE_METADATA_PARSER = PackageMetadataParser()
