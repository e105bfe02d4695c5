"""
Network serialization module.

This module defines the JSON document models for tensors and networks and the
functions that save and load networks with constraint validation.
"""

import json
import logging
import os
from typing import Any, Dict, List, Tuple

from pydantic import BaseModel, Field, ValidationError

from src.errors import MeraSimError, NetworkFormatError
from src.mera.network import MeraNetwork
from src.mera.topology import TensorId
from src.tensor_core import ComplexTensor

logger = logging.getLogger(__name__)


class TensorRecord(BaseModel):
    """Serialized tensor."""

    shape: List[int] = Field(..., description="Axis lengths")
    data: List[Tuple[float, float]] = Field(..., description="Row-major [re, im] pairs")


class NetworkDocument(BaseModel):
    """Serialized MERA network."""

    M: int = Field(..., ge=1, description="Number of layers")
    chi: int = Field(..., ge=2, description="Bond dimension cap")
    tensors: Dict[str, TensorRecord] = Field(..., description="Tensors keyed by layer:kind:position")


def network_to_dict(network: MeraNetwork) -> Dict[str, Any]:
    """
    Convert a network to its document form.

    Args:
        network (MeraNetwork): Network

    Returns:
        Dict[str, Any]: JSON-ready document
    """
    return {
        "M": network.num_layers,
        "chi": network.chi,
        "tensors": {tid.key: tensor.to_dict() for tid, tensor in network.tensors.items()},
    }


def network_from_dict(document: Dict[str, Any], validate: bool = True) -> MeraNetwork:
    """
    Rebuild a network from its document form.

    Args:
        document (Dict[str, Any]): Document produced by ``network_to_dict``
        validate (bool): Check every constraint after loading

    Returns:
        MeraNetwork: Reconstructed network

    Raises:
        NetworkFormatError: If the document is malformed or violates a constraint
    """
    try:
        doc = NetworkDocument.model_validate(document)
        tensors = {
            TensorId.parse(key): ComplexTensor.from_dict(record.model_dump())
            for key, record in doc.tensors.items()
        }
        network = MeraNetwork(doc.M, doc.chi, tensors)
        if validate:
            network.validate()
        return network
    except (ValidationError, MeraSimError) as e:
        raise NetworkFormatError(f"Invalid network document: {e}") from e


def save_network(network: MeraNetwork, path: str) -> str:
    """
    Write a network to a JSON file.

    Args:
        network (MeraNetwork): Network
        path (str): Output file

    Returns:
        str: Absolute path of the written file
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "w") as f:
        json.dump(network_to_dict(network), f)
    logger.info(f"Saved network to {path}")
    return os.path.abspath(path)


def load_network(path: str, validate: bool = True) -> MeraNetwork:
    """
    Read a network from a JSON file.

    Args:
        path (str): Input file
        validate (bool): Check every constraint after loading

    Returns:
        MeraNetwork: Loaded network
    """
    try:
        with open(path, "r") as f:
            document = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Failed to read network file {path}: {e}")
        raise NetworkFormatError(f"Failed to read network file {path}: {e}") from e
    return network_from_dict(document, validate=validate)
