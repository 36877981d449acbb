"""
Toolkit constants
"""

# Base node names of flow networks built from graphs
FLOW_SOURCE = '__source__'
FLOW_SINK = '__sink__'

# Separator between the two endpoints of an edge in JSON object keys
EDGE_KEY_SEPARATOR = '--'

# Fallbacks for the [budget] section of metadata.txt
DEFAULT_BUDGETS = {
    'oracle_max_edges': 24,
    'oracle_max_vertices': 32,
    'oracle_time_limit': 120,
    'cycle_relation_max_edges': 14,
    'configuration_max_part': 8,
    'multimatching_max_part': 20,
    'enumeration_max_edges': 24,
    'asm_max_order': 5,
}

# CLI exit codes
EXIT_COLOURABLE = 0
EXIT_NOT_COLOURABLE = 1
EXIT_INVALID_INPUT = 2
