import hashlib
import json
import math

import pandas as pd


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def config_hash(data: dict) -> str:
    """SHA-256 del JSON canónico de una configuración (permite detectar repeticiones que no coinciden)."""
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


def clean_number(value):
    """NaN e infinitos de pandas/numpy pasan a None para poder escribir JSON estándar."""
    if value is None:
        return None
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if hasattr(value, "item"):
        return clean_number(value.item())
    return value


def format_table(rows: list[dict], columns: list[str]) -> str:
    """Tabla de texto para la terminal."""
    if not rows:
        return "(sin filas)"
    # None pasa a NaN para que na_rep lo muestre como "-"
    records = [{col: math.nan if row.get(col) is None else row.get(col) for col in columns} for row in rows]
    frame = pd.DataFrame(records, columns=columns)
    return frame.to_string(index=False, na_rep="-", float_format=lambda v: f"{v:.4g}")
