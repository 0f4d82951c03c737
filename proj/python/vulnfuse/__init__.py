# vulnfuse: multimodal smart-contract vulnerability detection
# Copyright 2026 The vulnfuse Authors.
# SPDX-License-Identifier: Apache-2.0
"""Python access to the vulnfuse C++ core."""

import json

from ._vulnfuse import (
    Pipeline,
    VulnfuseError,
    cfg_dot,
    clean_source,
    compute_metrics,
    disassemble,
    local_embedding,
    simplify_opcodes,
)

LABELS = ("arithmetic", "reentrancy", "clean")


def pipeline(**config):
    """A Pipeline from keyword sections, e.g. pipeline(manifest=..., workspace=...)."""
    return Pipeline(json.dumps(config))


__all__ = [
    "LABELS",
    "Pipeline",
    "VulnfuseError",
    "cfg_dot",
    "clean_source",
    "compute_metrics",
    "disassemble",
    "local_embedding",
    "pipeline",
    "simplify_opcodes",
]
