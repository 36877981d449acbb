"""
Enums
"""

from enum import (
    Enum,
    auto
)


class Colour(Enum):
    """
    Edge colours
    """
    Blue = auto()
    Red = auto()

    @staticmethod
    def from_string(string: str) -> 'Colour':
        """
        Converts string value to a colour
        """
        return {
            'blue': Colour.Blue,
            'red': Colour.Red
        }[string]

    def to_string(self) -> str:
        """
        Converts colour to a string for JSON and DOT output
        """
        return {
            Colour.Blue: 'blue',
            Colour.Red: 'red'
        }[self]

    def sign(self) -> int:
        """
        Returns +1 for blue and -1 for red
        """
        return 1 if self == Colour.Blue else -1

    def opposite(self) -> 'Colour':
        """
        Returns the other colour
        """
        return Colour.Red if self == Colour.Blue else Colour.Blue


class VertexType(Enum):
    """
    Classification of skeleton vertices
    """
    LeafType = auto()
    TwigType = auto()
    TripleType = auto()
    Junction = auto()
    Unclassifiable = auto()

    def is_end_type(self) -> bool:
        """
        Returns True for the twig and triple types, whose skeleton edges
        share a forced colour
        """
        return self in (
            VertexType.TwigType,
            VertexType.TripleType
        )

    def to_string(self) -> str:
        """
        Converts vertex type to a string for reporting
        """
        return {
            VertexType.LeafType: 'leaf-type',
            VertexType.TwigType: 'twig-type',
            VertexType.TripleType: 'triple-type',
            VertexType.Junction: 'junction',
            VertexType.Unclassifiable: 'unclassifiable'
        }[self]


class Certificate(Enum):
    """
    Reasons why a graph has no colouring
    """
    NotBipartite = auto()
    Unbalanced = auto()
    EvenDegreeVertex = auto()
    IrreducibleTree = auto()
    UnclassifiableVertex = auto()
    LimbParityViolation = auto()
    JunctionSumViolation = auto()
    RedistributionFailure = auto()
    DegreeParityViolation = auto()
    MultimatchingViolation = auto()

    @staticmethod
    def from_string(string: str) -> 'Certificate':
        """
        Returns a Certificate from its name
        """
        return Certificate[string]

    def to_string(self) -> str:
        """
        Converts the certificate to a string for JSON output
        """
        return self.name


class ConfigureMethod(Enum):
    """
    Strategies for finding a configuration
    """
    Auto = auto()
    Cactus = auto()
    Brute = auto()

    @staticmethod
    def from_string(string: str) -> 'ConfigureMethod':
        """
        Converts string value to a configuration method
        """
        return {
            'auto': ConfigureMethod.Auto,
            'cactus': ConfigureMethod.Cactus,
            'brute': ConfigureMethod.Brute
        }[string]


class OutputFormat(Enum):
    """
    CLI output formats
    """
    Json = auto()
    Dot = auto()

    @staticmethod
    def from_string(string: str) -> 'OutputFormat':
        """
        Converts string value to an output format
        """
        return {
            'json': OutputFormat.Json,
            'dot': OutputFormat.Dot
        }[string]
