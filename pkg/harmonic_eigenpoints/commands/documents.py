"""
Reading and writing the JSON documents the commands exchange.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ValidationError

from harmonic_eigenpoints.constructor import ConstructionResult
from harmonic_eigenpoints.errors import ArgumentError
from harmonic_eigenpoints.poly_core import HomogeneousPolynomial
from harmonic_eigenpoints.schemas import ConstructionDocument, PolynomialDocument, TensorDocument
from harmonic_eigenpoints.tensor_bridge import SymmetricTensor, poly_to_tensor

_MODELS: dict[str, type[BaseModel]] = {
    "polynomial": PolynomialDocument,
    "tensor": TensorDocument,
    "construction": ConstructionDocument,
}


@dataclass(frozen=True)
class LoadedInput:
    """The polynomial/tensor pair a document describes."""

    polynomial: HomogeneousPolynomial
    tensor: SymmetricTensor
    construction: Optional[ConstructionResult] = None


def _guess_kind(raw: dict[str, Any]) -> str:
    if "kind" in raw:
        return str(raw["kind"])
    if "levels" in raw:
        return "construction"
    if "entries" in raw:
        return "tensor"
    if "terms" in raw:
        return "polynomial"
    raise ArgumentError("document has no 'kind' and matches no known shape")


def load_input(path: str | Path) -> LoadedInput:
    """Parse a polynomial, tensor or construction document (final level)."""
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as error:
        raise ArgumentError(f"cannot read {path}: {error}") from error
    except json.JSONDecodeError as error:
        raise ArgumentError(f"{path} is not valid JSON: {error}") from error
    if not isinstance(raw, dict):
        raise ArgumentError(f"{path} does not hold a JSON object")

    kind = _guess_kind(raw)
    model = _MODELS.get(kind)
    if model is None:
        raise ArgumentError(f"unsupported document kind {kind!r}")
    try:
        document = model.model_validate(raw)
    except ValidationError as error:
        raise ArgumentError(f"{path} is not a valid {kind} document: {error}") from error

    if isinstance(document, PolynomialDocument):
        polynomial = HomogeneousPolynomial.from_document(document)
        return LoadedInput(polynomial, poly_to_tensor(polynomial))
    if isinstance(document, TensorDocument):
        tensor = SymmetricTensor.from_document(document)
        return LoadedInput(tensor.polynomial, tensor)
    construction = ConstructionResult.from_document(document)
    if not construction.levels:
        raise ArgumentError(f"{path} holds a construction without levels")
    final = construction.final
    return LoadedInput(final.polynomial, final.tensor, construction)


def write_document(document: BaseModel, path: str | Path | None) -> str:
    """Serialize a document; returns the JSON text, writing it to path if given."""
    text = document.model_dump_json(indent=2)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
