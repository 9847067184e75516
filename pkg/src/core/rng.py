"""
Generador aleatorio con nombre: Philox de numpy (basado en contador, 64 bits).
Toda la aleatoriedad del proyecto sale de aquí, siempre a partir de una semilla explícita.
"""
import numpy as np

from src.errors import UsageError


def generator_id() -> str:
    """Identidad y versión del generador; se guarda en cada artefacto de salida."""
    return f"numpy.random.Philox/{np.__version__}"


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """
    Crea un generador independiente para (seed, *stream).
    `stream` permite derivar sub-flujos sin compartir estado entre corridas.
    """
    if seed < 0 or any(s < 0 for s in stream):
        raise UsageError("Las semillas deben ser enteros no negativos.")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, *stream])))
