"""Sieve checkpoint persistence."""
from __future__ import annotations

import base64
import json
import logging
import os
from pathlib import Path
from typing import Any

import numpy as np

from ..config import CHECKPOINT_VERSION
from ..errors import CheckpointError, CheckpointMismatchError
from .engine import SievePlan, SieveState

logger = logging.getLogger(__name__)


def plan_to_dict(plan: SievePlan) -> dict[str, Any]:
    return {
        "k": plan.k,
        "l": plan.l,
        "max_value": str(plan.max_value),
        "prime_bound": plan.prime_bound,
    }


def encode_state(plan: SievePlan, state: SieveState) -> dict[str, Any]:
    bitmap = np.packbits(state.survivors.astype(bool))
    return {
        "version": CHECKPOINT_VERSION,
        "plan": plan_to_dict(plan),
        "m_min": state.m_min,
        "m_max": state.m_max,
        "length": int(state.survivors.size),
        "primes_done": list(state.primes_done),
        "survivors": base64.b64encode(bitmap.tobytes()).decode("ascii"),
    }


def decode_state(data: dict[str, Any]) -> SieveState:
    try:
        length = int(data["length"])
        raw = base64.b64decode(data["survivors"], validate=True)
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), count=length).astype(bool)
        return SieveState(
            m_min=int(data["m_min"]),
            m_max=int(data["m_max"]),
            survivors=bits,
            primes_done=[int(p) for p in data["primes_done"]],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CheckpointError(f"malformed checkpoint: {exc}") from exc


class CheckpointStore:
    """Load and atomically save the sieve state for one plan at ``path``."""

    def __init__(self, path: Path) -> None:
        self.path = Path(path)

    def exists(self) -> bool:
        return self.path.exists()

    def load(self, plan: SievePlan) -> SieveState:
        try:
            with self.path.open("r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise CheckpointError(f"cannot read checkpoint {self.path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise CheckpointError(f"checkpoint {self.path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict) or data.get("version") != CHECKPOINT_VERSION:
            raise CheckpointError(f"checkpoint {self.path} has an unsupported format version")
        if data.get("plan") != plan_to_dict(plan):
            raise CheckpointMismatchError(
                f"checkpoint {self.path} was written for plan {data.get('plan')}, not {plan_to_dict(plan)}"
            )
        state = decode_state(data)
        logger.info("resumed from %s after %d primes", self.path, len(state.primes_done))
        return state

    def save(self, plan: SievePlan, state: SieveState) -> None:
        """Write next to the target, then rename over it."""
        self.path.parent.mkdir(parents=True, exist_ok=True)
        scratch = self.path.with_name(self.path.name + ".tmp")
        try:
            with scratch.open("w", encoding="utf-8") as fh:
                json.dump(encode_state(plan, state), fh, indent=2)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(scratch, self.path)
        except BaseException:
            scratch.unlink(missing_ok=True)
            raise
        logger.debug("checkpoint written to %s (%d primes)", self.path, len(state.primes_done))


__all__ = ["CheckpointStore", "decode_state", "encode_state", "plan_to_dict"]
