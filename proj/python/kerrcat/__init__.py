# Copyright 2026 The kerrcat Authors
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

"""Kerr-cat qubit simulation: models, open-system dynamics, gates, readout."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import __version__, run_config as _run_config, validate_config as _validate_config


def run(config):
    """Runs an experiment described by a config dict; returns the record dict."""
    return _json.loads(_run_config(_json.dumps(config)))


def validate(config):
    """Returns a list of (severity, path, message) diagnostics for a config dict."""
    return _validate_config(_json.dumps(config))
