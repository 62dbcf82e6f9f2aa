"""
Model JSON documents for trained GP and ITGP models.

    {"version": 1, "method": "gp",   "gp": {...}}
    {"version": 1, "method": "itgp", "itgp": {"gp": {...}, "c": ..., ...}}

Documents are validated against a JSON schema before use.
"""
import json
from pathlib import Path
from typing import Union

import jsonschema
from loguru import logger

from src.errors import ModelFormatError
from src.gp import TrainedGP
from src.itgp import ITGPResult
from src.utils import constants as keys
from src.utils.kernel_models import FitMethod, KernelFamily

Model = Union[TrainedGP, ITGPResult]

_NUMBER_LIST = {"type": "array", "items": {"type": "number"}}

GP_SCHEMA = {
    "type": "object",
    "required": [keys.FAMILY, keys.LOG_PARAMS, keys.MEAN_CONST, keys.TRAIN_X, keys.TRAIN_Y],
    "properties": {
        keys.FAMILY: {"enum": KernelFamily.get_choices_list()},
        keys.LOG_PARAMS: {
            "type": "object",
            "required": [keys.LOG_SIGNAL_SD, keys.LOG_LENGTHSCALE, keys.LOG_NOISE_SD],
            "properties": {
                keys.LOG_SIGNAL_SD: {"type": "number"},
                keys.LOG_LENGTHSCALE: {"type": "number"},
                keys.LOG_NOISE_SD: {"type": "number"},
            },
        },
        keys.MEAN_CONST: {"type": "number"},
        keys.TRAIN_X: {"type": "array", "minItems": 1},
        keys.TRAIN_Y: dict(_NUMBER_LIST, minItems=1),
        keys.TRAIN_INDICES: {"type": ["array", "null"], "items": {"type": "integer", "minimum": 0}},
    },
}

ITGP_SCHEMA = {
    "type": "object",
    "required": [
        keys.GP, keys.CONSISTENCY, keys.INLIERS, keys.SCALED_RESIDUALS,
        keys.N_ITERATIONS, keys.CONVERGED, keys.REWEIGHTED,
    ],
    "properties": {
        keys.GP: GP_SCHEMA,
        keys.CONSISTENCY: {"type": "number", "minimum": 1},
        keys.INLIERS: {"type": "array", "items": {"type": "integer", "minimum": 0}},
        keys.SCALED_RESIDUALS: _NUMBER_LIST,
        keys.N_ITERATIONS: {"type": "integer", "minimum": 1},
        keys.CONVERGED: {"type": "boolean"},
        keys.REWEIGHTED: {"type": "boolean"},
        keys.WARNING_KEY: {"type": ["string", "null"]},
    },
}

MODEL_SCHEMA = {
    "type": "object",
    "required": [keys.VERSION, keys.METHOD],
    "properties": {
        keys.VERSION: {"const": keys.FORMAT_VERSION},
        keys.METHOD: {"enum": FitMethod.get_choices_list()},
        keys.GP: GP_SCHEMA,
        keys.ITGP: ITGP_SCHEMA,
    },
    "oneOf": [
        {"properties": {keys.METHOD: {"const": FitMethod.GP.value}}, "required": [keys.GP]},
        {"properties": {keys.METHOD: {"const": FitMethod.ITGP.value}}, "required": [keys.ITGP]},
    ],
}


def model_to_document(model: Model) -> dict:
    if isinstance(model, ITGPResult):
        return {keys.VERSION: keys.FORMAT_VERSION, keys.METHOD: FitMethod.ITGP.value, keys.ITGP: model.to_dict()}
    return {keys.VERSION: keys.FORMAT_VERSION, keys.METHOD: FitMethod.GP.value, keys.GP: model.to_dict()}


def document_to_model(document: dict) -> Model:
    try:
        jsonschema.validate(instance=document, schema=MODEL_SCHEMA)
    except jsonschema.ValidationError as e:
        raise ModelFormatError(f"Model document failed validation: {e.message}") from e

    if document[keys.METHOD] == FitMethod.ITGP.value:
        return ITGPResult.from_dict(document[keys.ITGP])
    return TrainedGP.from_dict(document[keys.GP])


def save_model(model: Model, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(model_to_document(model), f, indent=2)
    logger.info(f"💾 Model saved to {path}")
    return path


def load_model(path: Union[str, Path]) -> Model:
    """
    Raises:
        ModelFormatError: If the file is missing, not JSON, or fails validation
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ModelFormatError(f"Cannot load model {path}: {e}") from e
    model = document_to_model(document)
    logger.debug(f"Loaded {document[keys.METHOD]} model from {path}")
    return model
