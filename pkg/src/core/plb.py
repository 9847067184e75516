"""
Propiedad PLB-U: buckets de grado [2^d, 2^(d+1)), verificación contra la cota de ley de potencia,
ajuste del c1 mínimo y las constantes de aproximación (a, b) con las cotas por problema.
"""
import logging
import math

import numpy as np

from src.config.consts import PLB_REL_TOLERANCE
from src.core.graph import Graph, Solution, undominated_count
from src.errors import DomainError, UsageError
from src.models import (
    BucketMargin,
    DegreeSumBound,
    PlbCheck,
    PlbConstants,
    PlbParams,
    RatioBounds,
)

logger = logging.getLogger(__name__)


def _require_ratio_domain(params: PlbParams):
    if params.beta <= 2:
        raise DomainError(f"La cota requiere beta > 2 (beta={params.beta}).")
    if params.c1 <= 0:
        raise DomainError(f"La cota requiere c1 > 0 (c1={params.c1}).")


def bucket_counts(g: Graph) -> list[tuple[int, int]]:
    """Pares (d, cantidad) para d = 0 .. ceil(log2(max(Δ, 1))). Los vértices de grado 0 no cuentan."""
    top = math.ceil(math.log2(max(g.max_degree, 1)))
    counts = [0] * (top + 1)
    for deg in g.degree.tolist():
        if deg > 0:
            counts[deg.bit_length() - 1] += 1
    return list(enumerate(counts))


def _power_sum(d: int, beta: float, t: float) -> float:
    """Suma de (i + t)^(-beta) para i en [2^d, 2^(d+1)), en orden ascendente."""
    i = np.arange(2 ** d, 2 ** (d + 1), dtype=np.float64)
    return math.fsum((i + t) ** (-beta))


def _bucket_scale(d: int, beta: float, t: float, n: int) -> float:
    return n * (t + 1) ** (beta - 1) * _power_sum(d, beta, t)


def plb_bucket_bound(d: int, params: PlbParams, n: int) -> float:
    if d < 0:
        raise UsageError(f"El índice de bucket debe ser >= 0, se recibió {d}.")
    if n < 1:
        raise UsageError(f"n debe ser >= 1, se recibió {n}.")
    return params.c1 * _bucket_scale(d, params.beta, params.t, n)


def check_plb(g: Graph, params: PlbParams) -> PlbCheck:
    """Compara cada bucket con su cota; el margen es cota - cantidad."""
    buckets, passed = [], True
    for d, count in bucket_counts(g):
        bound = plb_bucket_bound(d, params, max(g.n, 1))
        if count > bound + PLB_REL_TOLERANCE * max(1.0, bound):
            passed = False
        buckets.append(BucketMargin(d=d, count=count, bound=bound, margin=bound - count))
    return PlbCheck(passed=passed, buckets=buckets)


def fit_c1(g: Graph, beta: float, t: float) -> float:
    """Menor c1 con el que el grafo pasa check_plb para (beta, t)."""
    if g.m == 0:
        raise UsageError("No se puede ajustar c1 en un grafo sin aristas (no hay restricciones).")
    # Validación de beta y t
    PlbParams(beta, t, 1.0)
    return max(
        count / _bucket_scale(d, beta, t, g.n)
        for d, count in bucket_counts(g)
        if count > 0
    )


def constants_ab(params: PlbParams) -> PlbConstants:
    _require_ratio_domain(params)
    beta, t, c1 = params.beta, params.t, params.c1
    a = (beta - 1) / (beta - 2) / (1 - ((t + 2) / (t + 1)) ** (1 - beta))
    b = (4 * c1 * (t + 1) ** (beta - 1) / (beta - 1)) ** (1 / (beta - 2))
    b_alt = (4 * c1 * (t + 1) ** (beta - 1) / (beta - 2)) ** (1 / (beta - 2))
    return PlbConstants(a=a, b=b, b_alt=b_alt)


def ratio_bounds(params: PlbParams) -> RatioBounds:
    """Factores de aproximación por problema y algoritmo."""
    consts = constants_ab(params)
    ab = consts.a * consts.b
    beta, t, c1 = params.beta, params.t, params.c1
    return RatioBounds(
        mds_ea=2 * ab + 1,
        mds_gsemo=math.log(2 * ab + 1),
        mvc_ea=2 * ab,
        mvc_gsemo=math.log(2 * ab) + 1,
        cds_ea=2 * ab,
        cds_gsemo=math.log(2 * math.e * ab + math.e),
        mis_ea=ab + 0.5,
        mis_gsemo=2 * c1 * (beta + t - 1) / ((beta - 1) * (beta - 2)) + 1,
        cds_ea_proof=2 * ab + 1,
    )


def degree_sum_bound(params: PlbParams, n: int, max_deg: int) -> DegreeSumBound:
    """Cota de la suma de grados: suma finita hasta Δ y, si beta > 2, la cota integral."""
    if n < 0 or max_deg < 0:
        raise UsageError("n y max_deg deben ser >= 0.")
    beta, t, c1 = params.beta, params.t, params.c1
    i = np.arange(1, max_deg + 1, dtype=np.float64)
    finite = 2 * c1 * n * (t + 1) ** (beta - 1) * math.fsum(i * (i + t) ** (-beta))
    cap = None
    if beta > 2:
        cap = 2 * c1 * n * (beta + t - 1) / ((beta - 1) * (beta - 2))
    return DegreeSumBound(finite=finite, integral_cap=cap)


def verify_domset_ratio(g: Graph, params: PlbParams, d: Solution) -> tuple[float, bool]:
    """Devuelve (suma de (δ(v)+1) sobre D / |D|, si es <= 2ab + 1)."""
    if undominated_count(g, d) != 0:
        raise UsageError("El conjunto entregado no es dominante.")
    selected = d.bits.astype(bool)
    ratio = float((g.degree[selected] + 1).sum()) / d.size
    consts = constants_ab(params)
    within = ratio <= 2 * consts.a * consts.b + 1
    if not within:
        logger.warning("Cociente %.4f supera 2ab+1 para beta=%s, t=%s, c1=%.6g", ratio, params.beta, params.t, params.c1)
    return ratio, within
