PROD: str = "prod"
DEV: str = "dev"

REPORT_VERSION = "ncfourier/1.0"

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE_ERROR = 2

STDOUT_PATH = "-"

DISCRETE_MODEL_NOTE = (
    "finite abelian group model: X^ is the character group, P(x,chi)=chi(x), "
    "Q(chi,x)=chi(x)^-1/|X|; the 1/|X| normalization replaces the shift by the "
    "dualizing sheaf"
)
FAMILY_VERDICT_NOTE = "verified over family"
