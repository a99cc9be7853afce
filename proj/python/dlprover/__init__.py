# Copyright 2026 The dlprover Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================

"""Differential dynamic logic prover."""

import json as _json

from dlprover._core import (
    ModelError,
    ParseError,
    TacticError,
    TacticParseError,
    normalize,
    normalize_sequent,
    normalize_tactic,
)
from dlprover import _core

__all__ = [
    "ModelError",
    "ParseError",
    "Service",
    "TacticError",
    "TacticParseError",
    "counterexample",
    "decide",
    "normalize",
    "normalize_sequent",
    "normalize_tactic",
    "prove",
]


def decide(sequent, timeout=0.0):
    """QE verdict: {"result": "valid" | "invalid" | "unsupported", ...}."""
    return _json.loads(_core.decide(sequent, timeout))


def counterexample(sequent, timeout=0.0):
    """Counterexample search: {"result": "witness" | "none" | "unsupported", ...}."""
    return _json.loads(_core.counterexample(sequent, timeout))


def prove(model, tactic="", auto=False, timeout=0.0):
    """Proves the problem of a model text with a tactic script and/or auto."""
    return _json.loads(_core.prove(model, tactic, auto, timeout))


class Service:
    """The REST API in-process, backed by a data directory."""

    def __init__(self, data_dir, qe_timeout=5.0):
        self._service = _core.Service(str(data_dir), qe_timeout)

    def request(self, method, path, body=None, query=None):
        if body is None:
            payload = ""
        elif isinstance(body, str):
            payload = body
        else:
            payload = _json.dumps(body)
        status, text, is_text = self._service.handle(method, path, query or {}, payload)
        return status, (text if is_text else _json.loads(text))

    def get(self, path, query=None):
        return self.request("GET", path, query=query)

    def post(self, path, body=None):
        return self.request("POST", path, body=body)
