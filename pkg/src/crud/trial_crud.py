import csv
import io
from pathlib import Path

import pandas as pd

from src.config.consts import REQUIRED_NUMERIC_COLUMNS, TEXT_COLUMNS, TRIAL_COLUMNS
from src.errors import ResultsFileError

# Columnas mínimas para que un archivo sea un CSV de resultados
_BASE_COLUMNS = TRIAL_COLUMNS[:17]


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


class TrialCRUD:
    """Archivo CSV de corridas: líneas '# clave=valor' de cabecera y una fila por corrida."""

    @staticmethod
    def dumps(rows: list[dict], header: dict) -> str:
        buffer = io.StringIO()
        for key in sorted(header):
            buffer.write(f"# {key}={header[key]}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(TRIAL_COLUMNS)
        for row in rows:
            writer.writerow([_format(row.get(col)) for col in TRIAL_COLUMNS])
        return buffer.getvalue()

    @staticmethod
    def write_csv(path: str, rows: list[dict], header: dict):
        Path(path).write_text(TrialCRUD.dumps(rows, header), encoding="utf-8", newline="")

    @staticmethod
    def read_csv(path: str) -> tuple[pd.DataFrame, dict]:
        """
        Devuelve (filas, cabecera). Las filas con cantidad de campos distinta, con
        columnas obligatorias no enteras o con valores numéricos ilegibles se reportan
        juntas por número de línea.
        """
        try:
            header, columns, records, bad = TrialCRUD._scan(path)
        except UnicodeDecodeError as e:
            raise ResultsFileError(f"{path} no es texto UTF-8 válido (byte {e.start}).")

        if columns is None:
            raise ResultsFileError(f"{path} no tiene fila de encabezado.")
        if bad:
            raise ResultsFileError(f"Filas mal formadas en {path}", bad)

        frame = pd.DataFrame(records, columns=columns)
        for col in columns:
            if col not in TEXT_COLUMNS:
                frame[col] = pd.to_numeric(frame[col], errors="coerce")
        return frame, header

    @staticmethod
    def _scan(path: str) -> tuple[dict, list[str] | None, list[dict], list[int]]:
        header, columns, records, bad = {}, None, [], []
        with open(path, mode="r", encoding="utf-8", newline="") as file:
            for line_no, raw in enumerate(file, start=1):
                line = raw.rstrip("\r\n")
                if not line.strip():
                    continue
                if line.startswith("#"):
                    key, _, value = line[1:].strip().partition("=")
                    header[key.strip()] = value.strip()
                    continue
                fields = next(csv.reader([line]))
                if columns is None:
                    columns = fields
                    missing = [c for c in _BASE_COLUMNS if c not in columns]
                    if missing:
                        raise ResultsFileError(f"Faltan columnas en {path}: {', '.join(missing)}", [line_no])
                    continue
                if len(fields) != len(columns):
                    bad.append(line_no)
                    continue
                record = dict(zip(columns, fields))
                if not _valid_record(record):
                    bad.append(line_no)
                    continue
                records.append(record)
        return header, columns, records, bad


def _valid_record(record: dict) -> bool:
    """Enteras las obligatorias; el resto de las numéricas puede ir vacío pero no ilegible."""
    if not all(_is_int(record[c]) for c in REQUIRED_NUMERIC_COLUMNS):
        return False
    for col in TRIAL_COLUMNS:
        value = record.get(col, "")
        if col in REQUIRED_NUMERIC_COLUMNS or value == "":
            continue
        if col == "local_opt":
            if value not in ("true", "false"):
                return False
        elif col not in TEXT_COLUMNS and not _is_float(value):
            return False
    return True


def _is_int(text: str) -> bool:
    try:
        int(text)
        return True
    except ValueError:
        return False


def _is_float(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False
