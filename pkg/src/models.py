import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import NamedTuple

from src.config.consts import DEFAULT_PLB_BETAS, DEFAULT_PLB_TS
from src.core.graph import Solution
from src.errors import UsageError


# --- Entidad: Problema (tipo y sentido de optimización) ---
class Sense(str, Enum):
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"


class ProblemKind(str, Enum):
    MDS = "MDS"
    MVC = "MVC"
    CDS = "CDS"
    MIS = "MIS"


@dataclass(frozen=True)
class Problem:
    kind: ProblemKind
    # Variante literal de MVC: reutiliza la penalización por nodos no dominados
    mvc_literal: bool = False

    @property
    def sense(self) -> Sense:
        return Sense.MAXIMIZE if self.kind is ProblemKind.MIS else Sense.MINIMIZE

    @classmethod
    def parse(cls, name: str, mvc_literal: bool = False) -> "Problem":
        try:
            kind = ProblemKind(name.strip().upper())
        except ValueError:
            raise UsageError(f"Problema desconocido '{name}'. Opciones: MDS, MVC, CDS, MIS.")
        return cls(kind, mvc_literal=mvc_literal and kind is ProblemKind.MVC)

    def __str__(self):
        return self.kind.value


class Algorithm(str, Enum):
    EA = "ea"
    GSEMO = "gsemo"

    @classmethod
    def parse(cls, name: str) -> "Algorithm":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise UsageError(f"Algoritmo desconocido '{name}'. Opciones: ea, gsemo.")


# --- Entidad: Vector objetivo (todas las componentes son enteras) ---
class ObjectiveVector(NamedTuple):
    first: int
    second: int


# --- Entidad: Razón de aproximación ---
class ReferenceKind(str, Enum):
    EXACT = "exact"
    LOWER_BOUND = "lower-bound"
    UPPER_BOUND = "upper-bound"


@dataclass(frozen=True)
class ApproxRatio:
    achieved: int
    reference: int
    ratio: float
    reference_kind: ReferenceKind


# --- Entidad: Parámetros PLB y constantes derivadas ---
@dataclass(frozen=True)
class PlbParams:
    beta: float
    t: float
    c1: float

    def __post_init__(self):
        if not math.isfinite(self.beta) or self.beta <= 1:
            raise UsageError(f"beta debe ser > 1, se recibió {self.beta}.")
        if not math.isfinite(self.t) or self.t < 0:
            raise UsageError(f"t debe ser >= 0, se recibió {self.t}.")
        if not math.isfinite(self.c1) or self.c1 < 0:
            raise UsageError(f"c1 debe ser >= 0, se recibió {self.c1}.")


@dataclass(frozen=True)
class PlbConstants:
    a: float
    b: float
    # Variante de b con (beta - 2) en el denominador
    b_alt: float


@dataclass(frozen=True)
class RatioBounds:
    mds_ea: float
    mds_gsemo: float
    mvc_ea: float
    mvc_gsemo: float
    cds_ea: float
    cds_gsemo: float
    mis_ea: float
    mis_gsemo: float
    # Cota operativa de CDS para el (1+1) EA: 2ab + 1
    cds_ea_proof: float

    def for_run(self, kind: ProblemKind, algorithm: Algorithm) -> float:
        """Cota teórica aplicable a una corrida; para CDS con el EA se usa la cota operativa."""
        if kind is ProblemKind.CDS and algorithm is Algorithm.EA:
            return self.cds_ea_proof
        return getattr(self, f"{kind.value.lower()}_{algorithm.value}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DegreeSumBound:
    finite: float
    # Cota integral 2 c1 n (beta + t - 1) / ((beta - 1)(beta - 2)); None si beta <= 2
    integral_cap: float | None


@dataclass(frozen=True)
class BucketMargin:
    d: int
    count: int
    bound: float
    margin: float


@dataclass(frozen=True)
class PlbCheck:
    passed: bool
    buckets: list[BucketMargin]


# --- Entidad: Especificación de generación de grafos ---
@dataclass(frozen=True)
class GenSpec:
    model: str
    n: int = 0
    attach_m: int = 1
    beta_target: float = 2.5
    seed: int = 0
    path: str | None = None

    MODELS = ("pa", "chung-lu", "edge-list")

    def validate(self):
        if self.model not in self.MODELS:
            raise UsageError(f"Modelo desconocido '{self.model}'. Opciones: {', '.join(self.MODELS)}.")
        if not 0 <= self.seed < 2**64:
            raise UsageError("La semilla debe ser un entero de 64 bits sin signo.")
        if self.model == "pa" and not 1 <= self.attach_m < self.n:
            raise UsageError(f"PA requiere 1 <= attach_m < n (attach_m={self.attach_m}, n={self.n}).")
        if self.model == "chung-lu":
            if self.n < 1:
                raise UsageError("Chung-Lu requiere n >= 1.")
            if not math.isfinite(self.beta_target) or self.beta_target <= 2:
                raise UsageError(f"Chung-Lu requiere beta_target > 2, se recibió {self.beta_target}.")
        if self.model == "edge-list" and not self.path:
            raise UsageError("El modelo edge-list requiere una ruta de archivo.")

    def params(self) -> dict:
        """Parámetros relevantes del modelo, para el objeto 'meta' del JSON."""
        if self.model == "pa":
            return {"n": self.n, "attach_m": self.attach_m}
        if self.model == "chung-lu":
            return {"n": self.n, "beta_target": self.beta_target}
        return {"path": self.path}

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "GenSpec":
        return cls(**data)


# --- Entidad: Presupuesto de una corrida ---
@dataclass(frozen=True)
class RunBudget:
    max_evaluations: int
    # Para minimización: detener al tener una solución factible de tamaño <= target.
    # Para MIS (maximización): tamaño >= target.
    target: int | None = None
    stop_when_feasible: bool = False

    def __post_init__(self):
        if self.max_evaluations < 1:
            raise UsageError(f"max_evaluations debe ser >= 1, se recibió {self.max_evaluations}.")


# --- Entidad: Registro de una corrida ---
@dataclass
class TrialRecord:
    seed: int
    problem: str
    algorithm: str
    n: int
    m: int
    evals_to_feasible: int | None
    evals_total: int
    best_feasible_size: int | None
    first_feasible_size: int | None = None
    evals_to_empty: int | None = None
    best_solution: str | None = None
    archive_snapshot: list[tuple[int, int]] = field(default_factory=list)
    wall_time: float = 0.0

    def deterministic_view(self) -> dict:
        """Todos los campos salvo wall_time (lo único que varía entre repeticiones)."""
        data = asdict(self)
        data.pop("wall_time")
        return data


# --- Entidad: Resultado de un oráculo ---
@dataclass
class OracleResult:
    problem: str
    optimum_size: int
    witness: Solution
    method: str
    sequence_trace: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "problem": self.problem,
            "optimum_size": self.optimum_size,
            "witness": self.witness.indices(),
            "method": self.method,
            "sequence_trace": self.sequence_trace,
        }


class SizeBounds(NamedTuple):
    lower: int
    upper: int


# --- Entidad: Configuración de experimento ---
@dataclass
class ExperimentConfig:
    problem: str
    algorithm: str
    trials: int = 1
    base_seed: int = 0
    gen: GenSpec | None = None
    graph_path: str | None = None
    max_evaluations: int | None = None
    betas: tuple[float, ...] = DEFAULT_PLB_BETAS
    ts: tuple[float, ...] = DEFAULT_PLB_TS
    output: str = "results.csv"
    mvc_literal: bool = False

    def validate(self):
        Problem.parse(self.problem)
        Algorithm.parse(self.algorithm)
        if self.trials < 1:
            raise UsageError("trials debe ser >= 1.")
        if (self.gen is None) == (self.graph_path is None):
            raise UsageError("Debe indicarse exactamente una fuente de grafo: --graph o un modelo generador.")
        if self.gen is not None:
            self.gen.validate()
        if self.max_evaluations is not None and self.max_evaluations < 1:
            raise UsageError("El presupuesto debe ser >= 1.")
        if not self.betas or not self.ts:
            raise UsageError("La grilla PLB no puede estar vacía.")

    def seeds(self) -> list[int]:
        return [self.base_seed + i for i in range(self.trials)]

    def to_dict(self) -> dict:
        data = asdict(self)
        data["betas"] = list(self.betas)
        data["ts"] = list(self.ts)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        data = dict(data)
        if data.get("gen") is not None:
            data["gen"] = GenSpec.from_dict(data["gen"])
        for key in ("betas", "ts"):
            if key in data:
                data[key] = tuple(float(v) for v in data[key])
        return cls(**data)


# --- Entidad: Muestra de deriva ---
class DriftSample(NamedTuple):
    iteration: int
    potential: int
    decrease: int


# --- Entidad: Reporte resumen (solo datos derivados del CSV) ---
@dataclass
class SummaryReport:
    rows: list[dict]
    scaling: list[dict]
    source: str
    header: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


# --- Entidad: Resumen de deriva por valor de potencial ---
@dataclass(frozen=True)
class DriftBin:
    potential: int
    samples: int
    mean_decrease: float
    # s / (e n): deriva mínima exigida en el bin
    expected: float
    ratio: float
    below: bool


@dataclass
class DriftReport:
    problem: str
    n: int
    trials: int
    seed: int
    bins: list[DriftBin]
    min_samples: int

    @property
    def flagged(self) -> list[int]:
        """Potenciales con razón < 1 entre los bins con muestras suficientes."""
        return [b.potential for b in self.bins if b.below and b.samples >= self.min_samples]

    def to_dict(self) -> dict:
        data = asdict(self)
        data["flagged"] = self.flagged
        return data
