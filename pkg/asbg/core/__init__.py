"""
ASBG core module
"""

from .enums import (  # noqa
    Certificate,
    Colour,
    ConfigureMethod,
    OutputFormat,
    VertexType
)
from .constants import (  # noqa
    EXIT_COLOURABLE,
    EXIT_INVALID_INPUT,
    EXIT_NOT_COLOURABLE,
    FLOW_SINK,
    FLOW_SOURCE
)
from .exceptions import (  # noqa
    AsbgException,
    BudgetExceededException,
    GraphFormatException,
    NotColourableException,
    OddCycleException
)
from .logger import (  # noqa
    Logger,
    LogToStreamLogger
)
from .meta import PACKAGE_METADATA_PARSER  # noqa
from .graph import (  # noqa
    Bipartition,
    CandidateReport,
    Colouring,
    ColouredGraph,
    Graph,
    GraphUtils,
    edge_from_string,
    edge_key,
    edge_to_string
)
from .asm_bridge import (  # noqa
    AsmBridge,
    SignMatrix
)
from .structure import (  # noqa
    LeafTwigConfiguration,
    Limb,
    StructureAnalyzer,
    StructureReport
)
from .flow import (  # noqa
    FlowNetwork,
    FlowResult,
    FlowSolver
)
from .colouring import (  # noqa
    ColouringPipeline,
    Decision,
    WeightAssignment
)
from .config_space import (  # noqa
    AlternatingCycle,
    Configuration,
    ConfigurationSpace
)
from .oracle import (  # noqa
    Oracle,
    OracleBudget
)
from .dot_exporter import DotExporter  # noqa
