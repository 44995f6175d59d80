# Copyright 2026 The unisheaf Authors
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

"""Torsion, uniformizer series and lattice windows for Drinfeld modules over F_q[t].

Jobs are dictionaries with the fields of the command line flags, for example
``{"command": "uniformizer", "q": 2, "theta": [1], "prec": 6}``. Field
elements are lists of F_p coordinates, constant coordinate first.

Library errors raise :class:`UnisheafError` with ``args == (code, name,
message)``; ``code`` is also the exit code of the command line tool.
"""

import json

from ._unisheaf import (
    COMMANDS,
    DEFAULT_SEED,
    POLICY_VERSION,
    UnisheafError,
    error_name,
    suite_catalog,
)
from . import _unisheaf

__all__ = [
    "COMMANDS",
    "DEFAULT_SEED",
    "POLICY_VERSION",
    "UnisheafError",
    "cache_key",
    "error_name",
    "run_job",
    "suite_catalog",
    "verify",
]


def run_job(job, store=None):
    """Runs a job and returns its artifact.

    The artifact has the keys ``job``, ``result`` and ``tower``, plus ``cache``
    ("hit", "miss", "recomputed" or "off"). Only torsion jobs use ``store``.
    """
    return json.loads(_unisheaf.run_job_json(json.dumps(job), None if store is None else str(store)))


def verify(suites=(), seed=DEFAULT_SEED):
    """Runs the named suites (all when empty) and returns the report."""
    return json.loads(_unisheaf.verify_json(list(suites), seed))


def cache_key(job, policy_version=POLICY_VERSION):
    """Store key of a torsion job."""
    return _unisheaf.cache_key(json.dumps(dict(job, command="torsion")), policy_version)
