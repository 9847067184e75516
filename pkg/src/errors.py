from src.config.consts import EXIT_IO_ERROR, EXIT_REFUSED, EXIT_USAGE


class PlbEaError(Exception):
    """Error base del proyecto. Cada subclase conoce su código de salida en la CLI."""
    exit_code = 1


class UsageError(PlbEaError, ValueError):
    """Argumentos inválidos: vértice fuera de rango, largo incorrecto, parámetros fuera de dominio."""
    exit_code = EXIT_USAGE


class DomainError(UsageError):
    """La cota pedida no está definida para esos parámetros (ej. beta <= 2)."""


class ParseError(UsageError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"línea {line}: {message}"
        super().__init__(message)


class InstanceTooLargeError(PlbEaError):
    """El solver exacto se niega a trabajar sobre instancias sobre el límite."""
    exit_code = EXIT_REFUSED


class ArchiveInvariantError(PlbEaError, AssertionError):
    pass


class ResultsFileError(PlbEaError):
    def __init__(self, message: str, lines: list[int] | None = None):
        self.lines = lines or []
        if self.lines:
            message = f"{message} (líneas: {', '.join(map(str, self.lines))})"
        super().__init__(message)

    exit_code = EXIT_IO_ERROR


class StorageError(PlbEaError):
    """Fallo de lectura o escritura de archivos (grafos, resultados, reportes)."""
    exit_code = EXIT_IO_ERROR
