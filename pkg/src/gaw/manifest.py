"""Run manifests: everything needed to regenerate an output byte-for-byte."""

from __future__ import annotations

import base64
import hashlib
import json
from dataclasses import dataclass, field

from . import __version__


class ManifestError(ValueError):
    pass


class VersionMismatchError(ManifestError):
    pass


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@dataclass
class GenerationManifest:
    rule_id: str
    seed: int
    params: list  # ordered [key, value] pairs
    engine_version: str = __version__
    inputs: dict = field(default_factory=dict)  # name -> {"filename", "sha256", "content_b64"}
    outputs: list = field(default_factory=list)  # [{"role", "path", "sha256"}]
    extra: dict = field(default_factory=dict)

    def param_dict(self) -> dict:
        return {k: v for k, v in self.params}

    def add_input(self, name: str, filename: str, data: bytes) -> None:
        self.inputs[name] = {
            "filename": filename,
            "sha256": sha256_hex(data),
            "content_b64": base64.b64encode(data).decode("ascii"),
        }

    def input_bytes(self, name: str) -> bytes:
        try:
            entry = self.inputs[name]
        except KeyError:
            raise ManifestError(f"manifest lacks embedded input {name!r}") from None
        data = base64.b64decode(entry["content_b64"])
        if sha256_hex(data) != entry["sha256"]:
            raise ManifestError(f"embedded input {name!r} does not match its checksum")
        return data

    def to_json(self) -> str:
        doc = {
            "engine_version": self.engine_version,
            "extra": self.extra,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "params": [[k, v] for k, v in self.params],
            "rule_id": self.rule_id,
            "seed": self.seed,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "GenerationManifest":
        try:
            doc = json.loads(text)
            return cls(
                rule_id=doc["rule_id"],
                seed=int(doc["seed"]),
                params=[(k, v) for k, v in doc["params"]],
                engine_version=doc["engine_version"],
                inputs=doc.get("inputs", {}),
                outputs=doc.get("outputs", []),
                extra=doc.get("extra", {}),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ManifestError(f"malformed manifest: {exc}") from None

    def check_version(self, engine_version: str = __version__) -> None:
        if self.engine_version != engine_version:
            raise VersionMismatchError(
                f"manifest written by engine {self.engine_version}, this is {engine_version}; refusing to replay"
            )
