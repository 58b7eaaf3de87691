CONFIG_ENV_VAR = "MINORCERT_CONFIG"

# oracle limits
TREEWIDTH_LIMIT = 16
MINOR_LIMIT = 12
MINOR_PATTERN_LIMIT = 8
ENUMERATION_LIMIT = 8

# fuzz defaults
MAX_ORACLE_N = 8
FUZZ_SEEDS = 10
FUZZ_P = 0.3
FUZZ_N = 8

LOG_LEVEL = "INFO"

GRAPH_FORMATS = ("edgelist", "graph6")
PATTERN_KINDS = ("apex-forest", "wheel")

TD_SUFFIX = ".td"
MINOR_SUFFIX = ".minor.json"

# exit codes
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
