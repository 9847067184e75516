import logging
import os
import sys

from src.config.consts import DEFAULT_EXACT_LIMIT, DEFAULT_WORKERS
from src.errors import UsageError

_TRUTHY = {"1", "true", "yes", "on"}


class Settings:
    """
    Configuración de ejecución leída desde variables de entorno.
    Se usa una única instancia global (`settings`) en el resto de la app.
    """

    def __init__(self, environ=None):
        self._environ = os.environ if environ is None else environ
        self._logging_ready = False

    def _read_int(self, key: str, default: int, minimum: int = 1) -> int:
        raw = self._environ.get(key)
        if raw is None or not raw.strip():
            return default
        try:
            value = int(raw)
        except ValueError:
            raise UsageError(f"{key} debe ser un entero, se recibió '{raw}'.")
        if value < minimum:
            raise UsageError(f"{key} debe ser >= {minimum}, se recibió {value}.")
        return value

    @property
    def workers(self) -> int:
        return self._read_int("PLBEA_WORKERS", DEFAULT_WORKERS)

    @property
    def exact_limit(self) -> int:
        return self._read_int("PLBEA_EXACT_LIMIT", DEFAULT_EXACT_LIMIT, minimum=0)

    @property
    def audit_archive(self) -> bool:
        return self._environ.get("PLBEA_AUDIT", "").strip().lower() in _TRUTHY

    @property
    def log_level(self) -> int:
        name = self._environ.get("PLBEA_LOG_LEVEL", "WARNING").strip().upper()
        return getattr(logging, name, logging.WARNING)

    def configure_logging(self, level: int | None = None):
        """Instala un único handler en stderr. Llamadas repetidas solo ajustan el nivel."""
        root = logging.getLogger("src")
        root.setLevel(self.log_level if level is None else level)
        if self._logging_ready:
            return
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
        root.addHandler(handler)
        self._logging_ready = True


# Instancia global (Singleton implícito) para ser usada en el resto de la app
settings = Settings()
