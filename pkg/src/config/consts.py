# Códigos de salida de la CLI
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REFUSED = 3
EXIT_IO_ERROR = 4

# Columnas del CSV de resultados (orden fijo). Las últimas cuatro son suplementarias.
TRIAL_COLUMNS = [
    "trial", "seed", "n", "m", "beta", "t", "c1_fitted", "problem", "algo",
    "evals_to_feasible", "evals_total", "best_size", "reference", "reference_kind",
    "ratio", "theo_bound", "wall_ms",
    "first_size", "first_ratio", "evals_to_empty", "local_opt",
]

# Columnas que deben ser numéricas en toda fila (las demás pueden ir vacías)
REQUIRED_NUMERIC_COLUMNS = ["trial", "seed", "n", "m", "evals_total"]

# Columnas de texto; todas las demás se leen como números
TEXT_COLUMNS = ("problem", "algo", "reference_kind", "local_opt")

SUMMARY_COLUMNS = [
    "n", "problem", "algo", "trials", "feasible_fraction",
    "median_evals_to_feasible", "mean_evals_to_feasible",
    "mean_ratio", "max_ratio", "theo_bound", "bound_satisfaction",
]

# Grilla (beta, t) por defecto para ajustar c1
DEFAULT_PLB_BETAS = (2.1, 2.5, 3.0)
DEFAULT_PLB_TS = (0.0, 1.0)

DEFAULT_EXACT_LIMIT = 26
DEFAULT_WORKERS = 1

# Auditoría del archivo de GSEMO en modo normal (cada N iteraciones)
ARCHIVE_AUDIT_EVERY = 1000

# Estudio de escalamiento
SCALING_SIZES = (100, 200, 400, 800)
SCALING_TRIALS = 50
SCALING_ATTACH_M = 2

# Tolerancias numéricas
PLB_REL_TOLERANCE = 1e-12
RECURRENCE_TOLERANCE = 1e-9

# Umbral de muestras para que un bin de deriva cuente como "poblado"
DRIFT_MIN_SAMPLES = 100
